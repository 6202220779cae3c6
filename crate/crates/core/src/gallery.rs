//! Concrete parameterized constructions: the two-layer locally extremal
//! base, the Omiljanowski double space, neighborhood-system distances, the
//! punctured-grid counterexample space, and the economical metric on
//! finite Cantor cubes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cobweb::CobwebSpace;
use crate::distance_core::DistanceSpace;
use crate::error::Error;
use crate::rational::{format_rational, parse_rational, q, Q};
use crate::Result;

/// A point of the two-layer base `(0,1) x {0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtremalPoint {
    pub t: Q,
    pub layer: u8,
}

impl ExtremalPoint {
    pub fn new(t: Q, layer: u8) -> Result<Self> {
        if t <= Q::zero() || t >= Q::one() {
            return Err(Error::InvalidPoint(format!(
                "coordinate {} outside (0,1)",
                format_rational(&t)
            )));
        }
        if layer > 1 {
            return Err(Error::InvalidPoint(format!(
                "layer must be 0 or 1, got {layer}"
            )));
        }
        Ok(Self { t, layer })
    }

    /// Parses the CLI syntax `(t,layer)`, e.g. `(1/2,0)`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidPoint(format!("expected (t,layer), got `{s}`")))?;
        let (t_str, layer_str) = inner
            .split_once(',')
            .ok_or_else(|| Error::InvalidPoint(format!("expected (t,layer), got `{s}`")))?;
        let t = parse_rational(t_str)?;
        let layer: u8 = layer_str
            .trim()
            .parse()
            .map_err(|_| Error::InvalidPoint(format!("bad layer in `{s}`")))?;
        Self::new(t, layer)
    }
}

/// The symmetric distance on the two-layer base. Same coordinate on
/// opposite layers is distance 0; a layer-0 point sits at distance
/// `b - a` from a layer-1 point with smaller coordinate `a` when the gap
/// clears either shift window; everything else is one apart.
pub fn extremal_d(p: &ExtremalPoint, q_pt: &ExtremalPoint) -> Q {
    if p.t == q_pt.t {
        // identical point, or the same coordinate on opposite layers
        return Q::zero();
    }
    if p.layer == q_pt.layer {
        return Q::one();
    }
    let (b, a) = if p.layer == 0 {
        (&p.t, &q_pt.t)
    } else {
        (&q_pt.t, &p.t)
    };
    if b > a {
        let eps = b - a;
        if eps < Q::one() - b || eps < *a {
            return eps;
        }
    }
    Q::one()
}

/// A rational interval with independent open/closed endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Q,
    pub hi: Q,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl RatInterval {
    pub fn contains(&self, v: &Q) -> bool {
        let above = if self.lo_open {
            *v > self.lo
        } else {
            *v >= self.lo
        };
        let below = if self.hi_open {
            *v < self.hi
        } else {
            *v <= self.hi
        };
        above && below
    }
}

fn check_extremal_eps(p: &ExtremalPoint, eps: &Q) -> Result<()> {
    if *eps <= Q::zero() || *eps >= p.t || *eps >= Q::one() - &p.t {
        return Err(Error::Precondition(format!(
            "eps must lie in (0, min(t, 1-t)), got {}",
            format_rational(eps)
        )));
    }
    Ok(())
}

/// Coordinate projection of the distance ball around a layer point:
/// `(t-eps, t]` on layer 0 and `[t, t+eps)` on layer 1, straight from the
/// case analysis of [`extremal_d`].
pub fn extremal_ball_image(p: &ExtremalPoint, eps: &Q) -> Result<RatInterval> {
    check_extremal_eps(p, eps)?;
    Ok(if p.layer == 0 {
        RatInterval {
            lo: &p.t - eps,
            hi: p.t.clone(),
            lo_open: true,
            hi_open: false,
        }
    } else {
        RatInterval {
            lo: p.t.clone(),
            hi: &p.t + eps,
            lo_open: false,
            hi_open: true,
        }
    })
}

/// Verdict of [`extremal_check_local_extremum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// Whether the coordinate projection has a local maximum or minimum at
/// `p`: read off the closed end of the ball image.
pub fn extremal_check_local_extremum(p: &ExtremalPoint, eps: &Q) -> Result<Extremum> {
    let image = extremal_ball_image(p, eps)?;
    Ok(if !image.hi_open && image.hi == p.t {
        Extremum::Max
    } else {
        debug_assert!(!image.lo_open && image.lo == p.t);
        Extremum::Min
    })
}

/// A point of the doubled space `Y = X x {0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OmilPoint {
    pub x: String,
    pub flag: u8,
}

impl OmilPoint {
    pub fn new(x: impl Into<String>, flag: u8) -> Result<Self> {
        if flag > 1 {
            return Err(Error::InvalidPoint(format!(
                "flag must be 0 or 1, got {flag}"
            )));
        }
        Ok(Self { x: x.into(), flag })
    }
}

/// The Omiljanowski construction: a finite metric base together with a
/// marked subset `E`, doubled into a nonsymmetric distance space on
/// `X x {0,1}` whose cobweb ball images select `E` or its complement.
#[derive(Debug, Clone)]
pub struct OmilSpace {
    base: DistanceSpace,
    marked: BTreeSet<String>,
}

impl OmilSpace {
    pub fn new(base: DistanceSpace, marked: BTreeSet<String>) -> Result<Self> {
        if !base.check_axioms().is_metric {
            return Err(Error::Precondition(
                "the Omiljanowski base must be a metric space".into(),
            ));
        }
        for e in &marked {
            base.index_of(e)?;
        }
        Ok(Self { base, marked })
    }

    pub fn base(&self) -> &DistanceSpace {
        &self.base
    }

    pub fn marked(&self) -> &BTreeSet<String> {
        &self.marked
    }

    pub fn y_label(x: &str, flag: u8) -> String {
        format!("{x}|{flag}")
    }

    fn split_label(label: &str) -> Result<(String, u8)> {
        let (x, flag) = label
            .rsplit_once('|')
            .ok_or_else(|| Error::InvalidPoint(format!("bad doubled label `{label}`")))?;
        let flag: u8 = flag
            .parse()
            .map_err(|_| Error::InvalidPoint(format!("bad doubled label `{label}`")))?;
        Ok((x.to_string(), flag))
    }

    /// The four-case nonsymmetric distance on the doubled point set.
    pub fn omil_r(&self, p: &OmilPoint, q_pt: &OmilPoint) -> Result<Q> {
        self.base.index_of(&p.x)?;
        self.base.index_of(&q_pt.x)?;
        if p.x == q_pt.x {
            return Ok(Q::zero());
        }
        let in_marked = self.marked.contains(&q_pt.x);
        let gated = (p.flag == 0 && q_pt.flag == 0 && in_marked)
            || (p.flag == 1 && q_pt.flag == 0 && !in_marked);
        if gated {
            self.base.distance(&p.x, &q_pt.x)
        } else {
            Ok(Q::one())
        }
    }

    /// The doubled distance space `(Y, r)` as an explicit table.
    pub fn y_space(&self) -> Result<DistanceSpace> {
        let mut labels = Vec::new();
        for x in self.base.points() {
            for flag in [0u8, 1u8] {
                labels.push(Self::y_label(x, flag));
            }
        }
        let pts: Vec<OmilPoint> = self
            .base
            .points()
            .iter()
            .flat_map(|x| {
                [
                    OmilPoint {
                        x: x.clone(),
                        flag: 0,
                    },
                    OmilPoint {
                        x: x.clone(),
                        flag: 1,
                    },
                ]
            })
            .collect();
        let mut table = Vec::with_capacity(pts.len());
        for p in &pts {
            let mut row = Vec::with_capacity(pts.len());
            for q_pt in &pts {
                row.push(self.omil_r(p, q_pt)?);
            }
            table.push(row);
        }
        DistanceSpace::from_table(labels, table)
    }

    /// Projection of the cobweb vertex-ball image over `(Y, r)` back to
    /// the base: the computed side of the ball-image identity.
    pub fn omil_ball_image(&self, x: &str, flag: u8, eps: &Q) -> Result<BTreeSet<String>> {
        self.base.index_of(x)?;
        if flag > 1 {
            return Err(Error::InvalidPoint(format!(
                "flag must be 0 or 1, got {flag}"
            )));
        }
        if *eps <= Q::zero() || *eps >= q(1, 2) {
            return Err(Error::Precondition(format!(
                "eps must lie in (0, 1/2), got {}",
                format_rational(eps)
            )));
        }
        let cw = CobwebSpace::new(self.y_space()?)?;
        let img = cw.ball_image(&Self::y_label(x, flag), eps)?;
        let mut out = BTreeSet::new();
        for label in img {
            out.insert(Self::split_label(&label)?.0);
        }
        Ok(out)
    }

    /// The closed form the verification suites compare against:
    /// `{x} ∪ (B_d(x,eps) ∩ E)` for flag 0, `{x} ∪ (B_d(x,eps) \ E)` for
    /// flag 1.
    pub fn omil_ball_image_closed_form(
        &self,
        x: &str,
        flag: u8,
        eps: &Q,
    ) -> Result<BTreeSet<String>> {
        let ball = self.base.ball(x, eps)?;
        let mut out: BTreeSet<String> = if flag == 0 {
            ball.intersection(&self.marked).cloned().collect()
        } else {
            ball.difference(&self.marked).cloned().collect()
        };
        out.insert(x.to_string());
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct OmilWire {
    base: DistanceSpace,
    marked: Vec<String>,
}

impl Serialize for OmilSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OmilWire {
            base: self.base.clone(),
            marked: self.marked.iter().cloned().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OmilSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = OmilWire::deserialize(deserializer)?;
        OmilSpace::new(wire.base, wire.marked.into_iter().collect()).map_err(D::Error::custom)
    }
}

/// A finite family of nested neighborhood assignments `E_n(x)`,
/// stabilizing to `{x}` above its top level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodSystem {
    points: Vec<String>,
    levels: usize,
    /// `sets[i][n-1]` is `E_n(points[i])` as an index set.
    sets: Vec<Vec<BTreeSet<usize>>>,
}

impl NeighborhoodSystem {
    /// Validating constructor: requires `x ∈ E_{n+1}(x) ⊆ E_n(x)`.
    pub fn new(
        points: Vec<String>,
        sets_by_label: &BTreeMap<String, Vec<BTreeSet<String>>>,
    ) -> Result<Self> {
        let sys = Self::new_unchecked(points, sets_by_label)?;
        sys.validate()?;
        Ok(sys)
    }

    /// Skips the nesting validation. Exists so negative-control harnesses
    /// can build deliberately corrupted systems.
    pub fn new_unchecked(
        points: Vec<String>,
        sets_by_label: &BTreeMap<String, Vec<BTreeSet<String>>>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSpace("point set must be nonempty".into()));
        }
        let index: BTreeMap<&str, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let levels = sets_by_label.values().next().map(|v| v.len()).unwrap_or(0);
        if levels == 0 {
            return Err(Error::InvalidSpace("at least one level required".into()));
        }
        let mut sets = vec![Vec::new(); points.len()];
        for (label, families) in sets_by_label {
            let i = *index
                .get(label.as_str())
                .ok_or_else(|| Error::UnknownPoint(label.clone()))?;
            if families.len() != levels {
                return Err(Error::InvalidSpace(format!(
                    "point `{label}` has {} levels, expected {levels}",
                    families.len()
                )));
            }
            for fam in families {
                let mut mask = BTreeSet::new();
                for member in fam {
                    mask.insert(
                        *index
                            .get(member.as_str())
                            .ok_or_else(|| Error::UnknownPoint(member.clone()))?,
                    );
                }
                sets[i].push(mask);
            }
        }
        if sets.iter().any(|v| v.is_empty()) {
            return Err(Error::InvalidSpace(
                "every point needs a neighborhood family".into(),
            ));
        }
        Ok(Self {
            points,
            levels,
            sets,
        })
    }

    fn validate(&self) -> Result<()> {
        for (i, fams) in self.sets.iter().enumerate() {
            for n in 0..self.levels {
                if !fams[n].contains(&i) {
                    return Err(Error::InvalidSpace(format!(
                        "{} missing from its own E_{}",
                        self.points[i],
                        n + 1
                    )));
                }
                if n + 1 < self.levels && !fams[n + 1].is_subset(&fams[n]) {
                    return Err(Error::InvalidSpace(format!(
                        "E_{}({}) is not contained in E_{}({})",
                        n + 2,
                        self.points[i],
                        n + 1,
                        self.points[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `E_n(x)` with the stabilized convention `E_n(x) = {x}` for levels
    /// above the stored top.
    pub fn level_set(&self, x: usize, n: usize) -> BTreeSet<usize> {
        if n <= self.levels {
            self.sets[x][n - 1].clone()
        } else {
            BTreeSet::from([x])
        }
    }

    /// The induced distance `d(x,y) = inf { 1/n : y ∈ E_n(x) }`, which for
    /// a finite stabilized system is `1/n_max` for the deepest level still
    /// containing `y`, `1` when even `E_1(x)` misses `y`, and `0` on the
    /// diagonal.
    pub fn neighborhood_to_distance(&self) -> Result<DistanceSpace> {
        let n_pts = self.points.len();
        let mut table = vec![vec![Q::zero(); n_pts]; n_pts];
        for x in 0..n_pts {
            for y in 0..n_pts {
                if x == y {
                    continue;
                }
                let deepest = (1..=self.levels)
                    .rev()
                    .find(|n| self.sets[x][n - 1].contains(&y));
                table[x][y] = match deepest {
                    Some(n) => q(1, n as i64),
                    None => Q::one(),
                };
            }
        }
        DistanceSpace::from_table(self.points.clone(), table)
    }

    /// Both sandwich inclusions `E_{n+1}(x) ⊆ B_d(x, 1/n) ⊆ E_n(x)` for
    /// every point and stored level, with the stabilized `E_{N+1} = {x}`.
    pub fn sandwich_check(&self) -> Result<bool> {
        let space = self.neighborhood_to_distance()?;
        for x in 0..self.points.len() {
            for n in 1..=self.levels {
                let radius = q(1, n as i64);
                let ball: BTreeSet<usize> = space
                    .ball(&self.points[x], &radius)?
                    .iter()
                    .map(|l| space.index_of(l).unwrap())
                    .collect();
                let outer = self.level_set(x, n);
                let inner = self.level_set(x, n + 1);
                if !inner.is_subset(&ball) || !ball.is_subset(&outer) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

// --- NeighborhoodSystem JSON ---------------------------------------------

#[derive(Serialize, Deserialize)]
struct NeighborhoodWire {
    points: Vec<String>,
    levels: usize,
    sets: BTreeMap<String, Vec<Vec<String>>>,
}

impl Serialize for NeighborhoodSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut sets = BTreeMap::new();
        for (i, fams) in self.sets.iter().enumerate() {
            sets.insert(
                self.points[i].clone(),
                fams.iter()
                    .map(|fam| fam.iter().map(|j| self.points[*j].clone()).collect())
                    .collect(),
            );
        }
        NeighborhoodWire {
            points: self.points.clone(),
            levels: self.levels,
            sets,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NeighborhoodSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = NeighborhoodWire::deserialize(deserializer)?;
        let sets: BTreeMap<String, Vec<BTreeSet<String>>> = wire
            .sets
            .into_iter()
            .map(|(k, fams)| {
                (
                    k,
                    fams.into_iter().map(|f| f.into_iter().collect()).collect(),
                )
            })
            .collect();
        let sys = NeighborhoodSystem::new(wire.points, &sets).map_err(D::Error::custom)?;
        if sys.levels != wire.levels {
            return Err(D::Error::custom("declared level count mismatch"));
        }
        Ok(sys)
    }
}

/// Finite truncation of the punctured-grid example, with the exact
/// distance rule: Euclidean where that is rational, max-norm otherwise,
/// and the two-way override `d(origin, grid point) = 1`.
#[derive(Debug, Clone)]
pub struct NonFuTruncation {
    pub space: DistanceSpace,
    /// Ordered pairs whose Euclidean distance was irrational and got the
    /// max-norm substitute.
    pub maxnorm_pairs: Vec<(String, String)>,
}

/// Square root of a rational if it is exactly rational.
fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer();
    let d = v.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Q::new(sn, sd))
    } else {
        None
    }
}

pub fn nonfu_truncation(m: u32) -> Result<NonFuTruncation> {
    if m < 2 {
        return Err(Error::Precondition("truncation depth must be >= 2".into()));
    }
    if m > 64 {
        return Err(Error::SizeLimit(format!(
            "truncation depth {m} exceeds the supported maximum of 64"
        )));
    }
    let mut coords: Vec<(Q, Q)> = vec![(Q::zero(), Q::zero())];
    for n in 1..=m as i64 {
        coords.push((q(1, n), Q::zero()));
    }
    for n in 1..=m as i64 {
        for mm in 1..=m as i64 {
            coords.push((q(1, n), q(1, mm)));
        }
    }
    let label = |c: &(Q, Q)| format!("{}:{}", format_rational(&c.0), format_rational(&c.1));
    let labels: Vec<String> = coords.iter().map(&label).collect();
    let is_origin = |c: &(Q, Q)| c.0.is_zero() && c.1.is_zero();
    let on_grid = |c: &(Q, Q)| !c.0.is_zero() && !c.1.is_zero();

    let mut table = vec![vec![Q::zero(); coords.len()]; coords.len()];
    let mut maxnorm_pairs = Vec::new();
    for (i, a) in coords.iter().enumerate() {
        for (j, b) in coords.iter().enumerate() {
            if i == j {
                continue;
            }
            if (is_origin(a) && on_grid(b)) || (is_origin(b) && on_grid(a)) {
                table[i][j] = Q::one();
                continue;
            }
            let dx = (&a.0 - &b.0).abs();
            let dy = (&a.1 - &b.1).abs();
            let squared = &dx * &dx + &dy * &dy;
            table[i][j] = match rational_sqrt(&squared) {
                Some(v) => v,
                None => {
                    maxnorm_pairs.push((labels[i].clone(), labels[j].clone()));
                    dx.max(dy)
                }
            };
        }
    }
    let space = DistanceSpace::from_table(labels, table)?;
    Ok(NonFuTruncation {
        space,
        maxnorm_pairs,
    })
}

/// The economical Cantor-cube distance on equal-length bit strings:
/// `max_n |x(n) - y(n)| / n`, which is `1/n` for the first differing
/// position and `0` for equal strings.
pub fn cantor_cube_distance(x: &str, y: &str) -> Result<Q> {
    if x.len() != y.len() {
        return Err(Error::Precondition(format!(
            "bit strings must have equal length, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() || x.len() > 64 {
        return Err(Error::SizeLimit(format!(
            "bit string length must lie in 1..=64, got {}",
            x.len()
        )));
    }
    for s in [x, y] {
        if s.bytes().any(|b| b != b'0' && b != b'1') {
            return Err(Error::InvalidPoint(format!("not a bit string: `{s}`")));
        }
    }
    for (n, (cx, cy)) in x.bytes().zip(y.bytes()).enumerate() {
        if cx != cy {
            return Ok(q(1, (n + 1) as i64));
        }
    }
    Ok(Q::zero())
}
