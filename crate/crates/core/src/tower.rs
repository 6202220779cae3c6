//! Iterated cobwebs and their inverse limit.
//!
//! Level-`n` points are built recursively: a level-0 point is a base
//! point, and a level-`n` point is either a level-`(n-1)` point embedded
//! as a vertex or an interior edge point between two distinct level-`(n-1)`
//! points. Threads are compatible finite prefixes with a canonical
//! constant tail (the last coordinate re-embedded as a vertex at every
//! higher level), which keeps the limit metric exactly computable.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::distance_core::DistanceSpace;
use crate::error::Error;
use crate::graph_metric::{closed_form_distance, GenPoint};
use crate::rational::{format_rational, q, Q};
use crate::Result;

/// Default depth cap used by the seeded generators.
pub const DEFAULT_MAX_LEVEL: usize = 6;

/// Largest sample accepted by [`Tower::distinct_distance_count`].
const DISTANCE_COUNT_CAP: usize = 200;

/// A point of the level-`n` iterated cobweb.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LevelPoint {
    /// Level 0: a base point.
    Base(String),
    /// A level-`(n-1)` point embedded as a vertex of level `n`.
    Vertex(Box<LevelPoint>),
    /// An interior point of the edge `[a,b]` between two distinct
    /// level-`(n-1)` points.
    Interior {
        a: Box<LevelPoint>,
        b: Box<LevelPoint>,
        t: Q,
    },
}

impl LevelPoint {
    pub fn base(label: impl Into<String>) -> Self {
        LevelPoint::Base(label.into())
    }

    pub fn vertex(p: LevelPoint) -> Self {
        LevelPoint::Vertex(Box::new(p))
    }

    pub fn interior(a: LevelPoint, b: LevelPoint, t: Q) -> Self {
        LevelPoint::Interior {
            a: Box::new(a),
            b: Box::new(b),
            t,
        }
    }

    pub fn level(&self) -> usize {
        match self {
            LevelPoint::Base(_) => 0,
            LevelPoint::Vertex(p) => p.level() + 1,
            LevelPoint::Interior { a, .. } => a.level() + 1,
        }
    }
}

/// An inverse-limit element: a compatible prefix `(x_1, ..., x_N)` with
/// `x_n` at level `n`, continued by the canonical constant tail. Stored in
/// canonical form (trailing vertex re-embeddings trimmed), so structural
/// equality coincides with equality of the represented threads.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Thread {
    prefix: Vec<LevelPoint>,
}

impl Thread {
    pub fn prefix(&self) -> &[LevelPoint] {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }
}

/// Unvalidated wire form of a thread; turn it into a [`Thread`] with
/// [`Tower::thread`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThreadSpec {
    pub prefix: Vec<LevelPoint>,
}

/// Exact enclosure for a limit distance from a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoInterval {
    pub lower: Q,
    pub upper: Q,
}

impl RhoInterval {
    pub fn width(&self) -> Q {
        &self.upper - &self.lower
    }

    pub fn contains(&self, v: &Q) -> bool {
        self.lower <= *v && *v <= self.upper
    }

    /// Whether `self` is contained in `outer`.
    pub fn within(&self, outer: &RhoInterval) -> bool {
        outer.lower <= self.lower && self.upper <= outer.upper
    }
}

/// Result of [`Tower::distinct_distance_count`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCount {
    /// Number of distinct limit-distance values over all pairs.
    pub count: usize,
    /// Sum over levels `n <= N+1` of `|pr_n(sample)|^2`.
    pub bound: usize,
}

/// The iterated cobweb tower over a base distance space.
#[derive(Debug, Clone)]
pub struct Tower {
    base: DistanceSpace,
}

impl Tower {
    pub fn new(base: DistanceSpace) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &DistanceSpace {
        &self.base
    }

    /// Structural and membership validation of a level point: interior
    /// points need distinct endpoints of equal level and a parameter at or
    /// before the cut point `1 - min(rho_{n-1}(b,a), 1/2)`.
    pub fn validate_point(&self, p: &LevelPoint) -> Result<()> {
        match p {
            LevelPoint::Base(label) => {
                self.base.index_of(label)?;
                Ok(())
            }
            LevelPoint::Vertex(inner) => self.validate_point(inner),
            LevelPoint::Interior { a, b, t } => {
                self.validate_point(a)?;
                self.validate_point(b)?;
                if a.level() != b.level() {
                    return Err(Error::LevelMismatch(format!(
                        "edge endpoints at levels {} and {}",
                        a.level(),
                        b.level()
                    )));
                }
                if a == b {
                    return Err(Error::InvalidPoint(
                        "interior point needs distinct endpoints".into(),
                    ));
                }
                if *t <= Q::zero() || *t >= Q::one() {
                    return Err(Error::InvalidPoint(format!(
                        "interior parameter {} outside (0,1)",
                        format_rational(t)
                    )));
                }
                let d = self.rho_n(b, a)?;
                let d1 = d.min(q(1, 2));
                if *t > Q::one() - &d1 {
                    return Err(Error::InvalidPoint(format!(
                        "parameter {} beyond the cut point {}",
                        format_rational(t),
                        format_rational(&(Q::one() - &d1))
                    )));
                }
                Ok(())
            }
        }
    }

    /// The level-`n` metric between two points of equal level: the base
    /// distance at level 0, the graph closed form above (vertex equality
    /// is structural equality of the underlying points).
    pub fn rho_n(&self, p: &LevelPoint, q_pt: &LevelPoint) -> Result<Q> {
        if p.level() != q_pt.level() {
            return Err(Error::LevelMismatch(format!(
                "rho_n needs equal levels, got {} and {}",
                p.level(),
                q_pt.level()
            )));
        }
        let value = match (p, q_pt) {
            (LevelPoint::Base(x), LevelPoint::Base(y)) => self.base.distance(x, y)?,
            _ => closed_form_distance(&gen_point(p), &gen_point(q_pt)),
        };
        // graph metrics never exceed two
        debug_assert!(p.level() == 0 || value <= q(2, 1));
        Ok(value)
    }

    /// Compression one level down: vertices unwrap, interior points map
    /// to their first endpoint.
    pub fn level_compress(&self, p: &LevelPoint) -> Result<LevelPoint> {
        match p {
            LevelPoint::Base(_) => Err(Error::InvalidPoint(
                "level 0 points cannot be compressed further".into(),
            )),
            LevelPoint::Vertex(inner) => Ok((**inner).clone()),
            LevelPoint::Interior { a, .. } => Ok((**a).clone()),
        }
    }

    /// Validated thread constructor. Canonicalizes the prefix by trimming
    /// trailing vertex re-embeddings of the previous coordinate.
    pub fn thread(&self, prefix: Vec<LevelPoint>) -> Result<Thread> {
        if prefix.is_empty() {
            return Err(Error::InvalidPoint("thread prefix must be nonempty".into()));
        }
        for (i, p) in prefix.iter().enumerate() {
            if p.level() != i + 1 {
                return Err(Error::LevelMismatch(format!(
                    "prefix entry {} has level {}, expected {}",
                    i,
                    p.level(),
                    i + 1
                )));
            }
            self.validate_point(p)?;
        }
        for i in 0..prefix.len() - 1 {
            if self.level_compress(&prefix[i + 1])? != prefix[i] {
                return Err(Error::InvalidPoint(format!(
                    "prefix entries {} and {} are not compatible",
                    i + 1,
                    i + 2
                )));
            }
        }
        let mut prefix = prefix;
        while prefix.len() >= 2 {
            let trim = matches!(prefix.last(), Some(LevelPoint::Vertex(inner))
                if **inner == prefix[prefix.len() - 2]);
            if trim {
                prefix.pop();
            } else {
                break;
            }
        }
        Ok(Thread { prefix })
    }

    /// Boolean form of thread validation: do the compatibility equations
    /// (and all point invariants) hold?
    pub fn validate_thread(&self, prefix: &[LevelPoint]) -> bool {
        self.thread(prefix.to_vec()).is_ok()
    }

    /// The canonical lift of a base point: the constant thread.
    pub fn lift(&self, x: &str) -> Result<Thread> {
        self.base.index_of(x)?;
        self.thread(vec![LevelPoint::vertex(LevelPoint::base(x))])
    }

    /// Level-`n` coordinate of a thread (canonical tail beyond the
    /// prefix). `n >= 1`.
    pub fn coordinate(&self, th: &Thread, n: usize) -> LevelPoint {
        assert!(n >= 1, "coordinates are indexed from 1");
        if n <= th.prefix.len() {
            th.prefix[n - 1].clone()
        } else {
            let mut p = th.prefix.last().expect("prefix nonempty").clone();
            for _ in th.prefix.len()..n {
                p = LevelPoint::vertex(p);
            }
            p
        }
    }

    /// The limit compression map: compress the first coordinate down to
    /// the base.
    pub fn limit_compress(&self, th: &Thread) -> Result<String> {
        match self.level_compress(&th.prefix[0])? {
            LevelPoint::Base(label) => Ok(label),
            _ => unreachable!("level-1 points compress to level 0"),
        }
    }

    /// The exact limit distance `max_n rho_n(x_n, u_n) / n`.
    ///
    /// With canonical tails the maximum is computable: beyond the longer
    /// prefix both coordinates are vertex embeddings, at distance 0 (equal
    /// threads) or exactly 1, so the tail contributes `1/(N+1)` when the
    /// final coordinates differ and nothing otherwise.
    pub fn rho_infty(&self, a: &Thread, b: &Thread) -> Result<Q> {
        let n_max = a.prefix.len().max(b.prefix.len());
        let mut best = Q::zero();
        for n in 1..=n_max {
            let xa = self.coordinate(a, n);
            let xb = self.coordinate(b, n);
            let d = self.rho_n(&xa, &xb)? / Q::from_integer((n as i64).into());
            if d > best {
                best = d;
            }
        }
        if self.coordinate(a, n_max) != self.coordinate(b, n_max) {
            let tail = q(1, (n_max + 1) as i64);
            if tail > best {
                best = tail;
            }
        }
        Ok(best)
    }

    /// Certified enclosure of the limit distance from the first `n`
    /// coordinates: any compatible extension of the prefixes has its limit
    /// distance inside the interval, whose width is at most `2/(n+1)`.
    pub fn rho_infty_interval(&self, a: &Thread, b: &Thread, n: usize) -> Result<RhoInterval> {
        if n == 0 {
            return Err(Error::Precondition("interval depth must be >= 1".into()));
        }
        let mut lower = Q::zero();
        for m in 1..=n {
            let xa = self.coordinate(a, m);
            let xb = self.coordinate(b, m);
            let d = self.rho_n(&xa, &xb)? / Q::from_integer((m as i64).into());
            if d > lower {
                lower = d;
            }
        }
        let tail_cap = q(2, (n + 1) as i64);
        let upper = if tail_cap > lower {
            tail_cap
        } else {
            lower.clone()
        };
        Ok(RhoInterval { lower, upper })
    }

    /// Counts distinct limit-distance values over all pairs from the
    /// sample and the level-wise bound `sum_{n<=N+1} |pr_n|^2` that must
    /// dominate it.
    pub fn distinct_distance_count(&self, sample: &[Thread]) -> Result<DistanceCount> {
        if sample.len() > DISTANCE_COUNT_CAP {
            return Err(Error::SizeLimit(format!(
                "distinct_distance_count accepts at most {DISTANCE_COUNT_CAP} threads"
            )));
        }
        if sample.is_empty() {
            return Ok(DistanceCount { count: 0, bound: 0 });
        }
        let n_max = sample.iter().map(|t| t.prefix.len()).max().unwrap();
        let mut values: BTreeSet<Q> = BTreeSet::new();
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i..] {
                values.insert(self.rho_infty(a, b)?);
            }
        }
        let mut bound = 0usize;
        for n in 1..=n_max + 1 {
            let coords: BTreeSet<LevelPoint> =
                sample.iter().map(|t| self.coordinate(t, n)).collect();
            bound += coords.len() * coords.len();
        }
        Ok(DistanceCount {
            count: values.len(),
            bound,
        })
    }

    /// A radius in `(0, r)` realized by no distance from `center` to the
    /// sample: the midpoint of the lowest gap below the smallest realized
    /// distance under `r`. Always exists for finite samples.
    pub fn find_unrealized_radius(&self, sample: &[Thread], center: &Thread, r: &Q) -> Result<Q> {
        if *r <= Q::zero() {
            return Err(Error::Precondition("radius must be positive".into()));
        }
        let mut smallest: Option<Q> = None;
        for th in sample {
            let d = self.rho_infty(center, th)?;
            if d > Q::zero() && d < *r {
                match &smallest {
                    Some(s) if *s <= d => {}
                    _ => smallest = Some(d),
                }
            }
        }
        Ok(match smallest {
            Some(d) => d / Q::from_integer(2.into()),
            None => r / Q::from_integer(2.into()),
        })
    }
}

fn gen_point(p: &LevelPoint) -> GenPoint<'_, LevelPoint> {
    match p {
        LevelPoint::Vertex(v) => GenPoint::Vertex(v),
        LevelPoint::Interior { a, b, t } => GenPoint::Interior(a, b, t),
        LevelPoint::Base(_) => unreachable!("level-0 points are handled by the base metric"),
    }
}

// --- JSON wire format ----------------------------------------------------
//
// `{"lvl":0,"base":"a"}`, `{"lvl":2,"vertex":{...}}`,
// `{"lvl":2,"interior":{"a":{...},"b":{...},"t":"1/3"}}`

mod level_point_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct InteriorWire {
        a: Box<LevelPoint>,
        b: Box<LevelPoint>,
        t: String,
    }

    #[derive(Serialize, Deserialize)]
    struct Wire {
        lvl: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        base: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        vertex: Option<Box<LevelPoint>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        interior: Option<InteriorWire>,
    }

    impl Serialize for LevelPoint {
        fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
            let mut wire = Wire {
                lvl: self.level(),
                base: None,
                vertex: None,
                interior: None,
            };
            match self {
                LevelPoint::Base(label) => wire.base = Some(label.clone()),
                LevelPoint::Vertex(p) => wire.vertex = Some(p.clone()),
                LevelPoint::Interior { a, b, t } => {
                    wire.interior = Some(InteriorWire {
                        a: a.clone(),
                        b: b.clone(),
                        t: format_rational(t),
                    })
                }
            }
            wire.serialize(serializer)
        }
    }

    impl<'de> Deserialize<'de> for LevelPoint {
        fn deserialize<D: Deserializer<'de>>(
            deserializer: D,
        ) -> std::result::Result<Self, D::Error> {
            let wire = Wire::deserialize(deserializer)?;
            let point = match (wire.base, wire.vertex, wire.interior) {
                (Some(label), None, None) => LevelPoint::Base(label),
                (None, Some(p), None) => LevelPoint::Vertex(p),
                (None, None, Some(iw)) => {
                    let t = crate::rational::parse_rational(&iw.t).map_err(D::Error::custom)?;
                    LevelPoint::Interior {
                        a: iw.a,
                        b: iw.b,
                        t,
                    }
                }
                _ => {
                    return Err(D::Error::custom(
                        "exactly one of base/vertex/interior must be present",
                    ))
                }
            };
            if point.level() != wire.lvl {
                return Err(D::Error::custom(format!(
                    "declared level {} does not match structural level {}",
                    wire.lvl,
                    point.level()
                )));
            }
            Ok(point)
        }
    }
}
