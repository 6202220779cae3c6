//! The cobweb over a distance space: the subspace of Γ(X) keeping, on each
//! edge `[a,b]`, the initial sub-arc up to the cut point at parameter
//! `1 - min(d(b,a), 1/2)`, together with the compression map that collapses
//! each kept star to its vertex.
//!
//! The cobweb carries the subspace metric from Γ(X) unchanged. Balls and
//! fibers are returned as exact symbolic arc unions so the identities the
//! verification suites assert are set equalities, not sampled claims.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::distance_core::{AxiomReport, DistanceSpace};
use crate::error::Error;
use crate::graph_metric::{hedgehog_distance, GammaPoint, GammaSpace, HedgehogPoint};
use crate::rational::{format_rational, parse_rational, q, Q};
use crate::Result;

/// A sub-arc of one oriented edge: the interior points `(from, to, t)`
/// with `lo < t < hi` (endpoints included per the open flags). Arcs never
/// denote vertices; `lo = 0` and `hi = 1` therefore force the
/// corresponding end open.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arc {
    pub edge: (String, String),
    pub lo: Q,
    pub hi: Q,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Arc {
    pub fn new(edge: (String, String), lo: Q, hi: Q, lo_open: bool, hi_open: bool) -> Result<Self> {
        if edge.0 == edge.1 {
            return Err(Error::InvalidPoint("degenerate edge in arc".into()));
        }
        if lo < Q::zero() || hi > Q::one() || lo >= hi {
            return Err(Error::InvalidPoint(format!(
                "arc bounds must satisfy 0 <= lo < hi <= 1, got [{}, {}]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        let lo_open = lo_open || lo.is_zero();
        let hi_open = hi_open || hi.is_one();
        Ok(Self {
            edge,
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    /// Whether parameter `t` lies on this arc.
    pub fn contains_t(&self, t: &Q) -> bool {
        let above = if self.lo_open {
            *t > self.lo
        } else {
            *t >= self.lo
        };
        let below = if self.hi_open {
            *t < self.hi
        } else {
            *t <= self.hi
        };
        above && below
    }

    fn overlaps_or_touches(&self, other: &Arc) -> bool {
        debug_assert_eq!(self.edge, other.edge);
        debug_assert!(self.lo <= other.lo);
        if other.lo < self.hi {
            return true;
        }
        other.lo == self.hi && (!self.hi_open || !other.lo_open)
    }
}

/// A finite set of vertices plus finitely many edge sub-arcs: the exact
/// symbolic subsets of Γ(X) produced by ball and fiber computations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArcUnion {
    pub vertices: BTreeSet<String>,
    pub arcs: Vec<Arc>,
}

impl ArcUnion {
    pub fn new(vertices: BTreeSet<String>, arcs: Vec<Arc>) -> Self {
        let mut out = Self { vertices, arcs };
        out.normalize();
        out
    }

    /// Sorts arcs and merges overlapping or touching arcs on the same
    /// edge, so equal point sets compare equal structurally.
    pub fn normalize(&mut self) {
        self.arcs.sort();
        let mut merged: Vec<Arc> = Vec::with_capacity(self.arcs.len());
        for arc in self.arcs.drain(..) {
            match merged.last_mut() {
                Some(last) if last.edge == arc.edge && last.overlaps_or_touches(&arc) => {
                    if arc.lo == last.lo {
                        last.lo_open = last.lo_open && arc.lo_open;
                    }
                    if arc.hi > last.hi {
                        last.hi = arc.hi;
                        last.hi_open = arc.hi_open;
                    } else if arc.hi == last.hi {
                        last.hi_open = last.hi_open && arc.hi_open;
                    }
                }
                _ => merged.push(arc),
            }
        }
        self.arcs = merged;
    }

    pub fn union(&self, other: &ArcUnion) -> ArcUnion {
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().cloned());
        ArcUnion::new(vertices, arcs)
    }

    pub fn without_vertex(&self, label: &str) -> ArcUnion {
        let mut out = self.clone();
        out.vertices.remove(label);
        out
    }

    pub fn contains_gamma(&self, p: &GammaPoint) -> bool {
        match p {
            GammaPoint::Vertex(v) => self.vertices.contains(v),
            GammaPoint::Interior { from, to, t } => self
                .arcs
                .iter()
                .any(|a| a.edge.0 == *from && a.edge.1 == *to && a.contains_t(t)),
        }
    }

    /// Image under the compression map: the vertex set plus the start
    /// vertex of every arc (interior points of `[a,b]` compress to `a`).
    pub fn compress_image(&self) -> BTreeSet<String> {
        let mut out = self.vertices.clone();
        out.extend(self.arcs.iter().map(|a| a.edge.0.clone()));
        out
    }

    /// Whether the union is a star at `x`: every arc starts at `x` with
    /// `lo = 0` (the shape of a compression fiber).
    pub fn is_star_at(&self, x: &str) -> bool {
        self.arcs.iter().all(|a| a.edge.0 == x && a.lo.is_zero())
    }

    /// Grid sample of the arc parameter range: all multiples of `1/k`
    /// strictly inside each arc plus any closed endpoints, and every
    /// vertex. Used by tests to compare symbolic sets against distance
    /// evaluations.
    pub fn sample_points(&self, k: u32) -> Vec<GammaPoint> {
        let mut out: Vec<GammaPoint> = self
            .vertices
            .iter()
            .map(|v| GammaPoint::Vertex(v.clone()))
            .collect();
        let kq = Q::from_integer(k.into());
        for arc in &self.arcs {
            let mut ts: Vec<Q> = Vec::new();
            for i in 1..k {
                let t = Q::new(i.into(), k.into());
                if arc.contains_t(&t) {
                    ts.push(t);
                }
            }
            for (end, open) in [(&arc.lo, arc.lo_open), (&arc.hi, arc.hi_open)] {
                if !open && !(end * &kq).is_integer() {
                    ts.push(end.clone());
                }
            }
            for t in ts {
                if t > Q::zero() && t < Q::one() {
                    out.push(GammaPoint::Interior {
                        from: arc.edge.0.clone(),
                        to: arc.edge.1.clone(),
                        t,
                    });
                }
            }
        }
        out
    }
}

/// Half-open interval bookkeeping for clipping ball arcs against the kept
/// part of an edge.
fn intersect(
    (alo, alo_open, ahi, ahi_open): (&Q, bool, &Q, bool),
    (blo, blo_open, bhi, bhi_open): (&Q, bool, &Q, bool),
) -> Option<(Q, bool, Q, bool)> {
    let (lo, lo_open) = if alo > blo {
        (alo.clone(), alo_open)
    } else if blo > alo {
        (blo.clone(), blo_open)
    } else {
        (alo.clone(), alo_open || blo_open)
    };
    let (hi, hi_open) = if ahi < bhi {
        (ahi.clone(), ahi_open)
    } else if bhi < ahi {
        (bhi.clone(), bhi_open)
    } else {
        (ahi.clone(), ahi_open || bhi_open)
    };
    if lo < hi {
        Some((lo, lo_open, hi, hi_open))
    } else {
        None
    }
}

/// The cobweb over a distance space, with its truncated table and the
/// ambient graph metric.
#[derive(Debug, Clone)]
pub struct CobwebSpace {
    base: DistanceSpace,
    d1: Vec<Vec<Q>>,
    gamma: GammaSpace,
    axioms: AxiomReport,
}

impl CobwebSpace {
    pub fn new(base: DistanceSpace) -> Result<Self> {
        let trunc = base.truncate_d1();
        let n = base.len();
        let d1 = (0..n)
            .map(|i| (0..n).map(|j| trunc.d1(i, j).clone()).collect())
            .collect();
        let gamma = GammaSpace::new(base.points().to_vec())?;
        let axioms = base.check_axioms();
        Ok(Self {
            base,
            d1,
            gamma,
            axioms,
        })
    }

    pub fn base(&self) -> &DistanceSpace {
        &self.base
    }

    pub fn gamma(&self) -> &GammaSpace {
        &self.gamma
    }

    pub fn d1(&self, i: usize, j: usize) -> &Q {
        &self.d1[i][j]
    }

    /// Kept length of edge `[from, to]`: interior points survive up to
    /// parameter `1 - d1(to, from)` inclusive.
    fn kept_hi(&self, from: usize, to: usize) -> Q {
        Q::one() - &self.d1[to][from]
    }

    /// Membership in the cobweb. Vertices always belong; an interior point
    /// of `[x,y]` belongs iff it sits at or before the cut point.
    pub fn contains(&self, p: &GammaPoint) -> Result<bool> {
        self.gamma.validate(p)?;
        Ok(match p {
            GammaPoint::Vertex(_) => true,
            GammaPoint::Interior { from, to, t } => {
                let i = self.base.index_of(from)?;
                let j = self.base.index_of(to)?;
                *t <= self.kept_hi(i, j)
            }
        })
    }

    fn require_member(&self, p: &GammaPoint) -> Result<()> {
        if self.contains(p)? {
            Ok(())
        } else {
            Err(Error::InvalidPoint(format!(
                "point is not in the cobweb: {}",
                serde_json::to_string(p).unwrap_or_default()
            )))
        }
    }

    /// The compression map: vertices are fixed, interior points of
    /// `[x,y]` collapse to `x`.
    pub fn compress(&self, p: &GammaPoint) -> Result<String> {
        self.require_member(p)?;
        Ok(match p {
            GammaPoint::Vertex(v) => v.clone(),
            GammaPoint::Interior { from, .. } => from.clone(),
        })
    }

    /// Subspace metric: the ambient Γ-distance restricted to cobweb
    /// members.
    pub fn distance(&self, p: &GammaPoint, q: &GammaPoint) -> Result<Q> {
        self.require_member(p)?;
        self.require_member(q)?;
        self.gamma.distance(p, q)
    }

    /// Exact symbolic open ball intersected with the cobweb.
    ///
    /// Supported radii: `0 < r <= 1/2` at a vertex, `0 < r <= min(t, 1-t)`
    /// at an interior point. In these ranges the ball has a single closed
    /// form (a star of clipped arcs, resp. one clipped arc).
    pub fn cob_ball(&self, center: &GammaPoint, r: &Q) -> Result<ArcUnion> {
        self.require_member(center)?;
        if *r <= Q::zero() {
            return Err(Error::UnsupportedRadius("radius must be positive".into()));
        }
        match center {
            GammaPoint::Vertex(x) => {
                if *r > q(1, 2) {
                    return Err(Error::UnsupportedRadius(format!(
                        "cob_ball at a vertex supports r <= 1/2, got {}; sample the ball \
                         with grid points and the graph distance instead",
                        format_rational(r)
                    )));
                }
                let xi = self.base.index_of(x)?;
                let mut vertices = BTreeSet::new();
                vertices.insert(x.clone());
                let mut arcs = Vec::new();
                for (ui, u) in self.base.points().iter().enumerate() {
                    if ui == xi {
                        continue;
                    }
                    // initial sub-arc of [x,u]: distance from x is t
                    let kept = self.kept_hi(xi, ui);
                    if let Some((lo, lo_open, hi, hi_open)) = intersect(
                        (&Q::zero(), true, r, true),
                        (&Q::zero(), true, &kept, kept.is_one()),
                    ) {
                        arcs.push(Arc::new((x.clone(), u.clone()), lo, hi, lo_open, hi_open)?);
                    }
                    // terminal sub-arc of [u,x]: distance from x is 1-t
                    let lo_ball = Q::one() - r;
                    let kept = self.kept_hi(ui, xi);
                    if let Some((lo, lo_open, hi, hi_open)) = intersect(
                        (&lo_ball, true, &Q::one(), true),
                        (&Q::zero(), true, &kept, kept.is_one()),
                    ) {
                        arcs.push(Arc::new((u.clone(), x.clone()), lo, hi, lo_open, hi_open)?);
                    }
                }
                Ok(ArcUnion::new(vertices, arcs))
            }
            GammaPoint::Interior { from, to, t } => {
                let cap = t.clone().min(Q::one() - t);
                if *r > cap {
                    return Err(Error::UnsupportedRadius(format!(
                        "cob_ball at an interior point supports r <= min(t, 1-t) = {}, got {}; \
                         sample the ball with grid points and the graph distance instead",
                        format_rational(&cap),
                        format_rational(r)
                    )));
                }
                let i = self.base.index_of(from)?;
                let j = self.base.index_of(to)?;
                let kept = self.kept_hi(i, j);
                let lo_ball = t - r;
                let hi_ball = t + r;
                let segment = intersect(
                    (&lo_ball, true, &hi_ball, true),
                    (&Q::zero(), true, &kept, kept.is_one()),
                )
                .expect("the center itself lies in the segment");
                let (lo, lo_open, hi, hi_open) = segment;
                Ok(ArcUnion::new(
                    BTreeSet::new(),
                    vec![Arc::new(
                        (from.clone(), to.clone()),
                        lo,
                        hi,
                        lo_open,
                        hi_open,
                    )?],
                ))
            }
        }
    }

    /// Compression image of the vertex ball of radius `r` in the cobweb.
    /// Computed through [`Self::cob_ball`]; the verification suites check
    /// it equals the base-space ball exactly.
    pub fn ball_image(&self, x: &str, r: &Q) -> Result<BTreeSet<String>> {
        if *r <= Q::zero() || *r > q(1, 2) {
            return Err(Error::UnsupportedRadius(format!(
                "ball_image supports 0 < r <= 1/2, got {}",
                format_rational(r)
            )));
        }
        Ok(self
            .cob_ball(&GammaPoint::Vertex(x.to_string()), r)?
            .compress_image())
    }

    /// The compression fiber over `x`: the vertex plus the kept initial
    /// sub-arc of every out-edge `[x,u]`.
    pub fn fiber(&self, x: &str) -> Result<ArcUnion> {
        let xi = self.base.index_of(x)?;
        let mut vertices = BTreeSet::new();
        vertices.insert(x.to_string());
        let mut arcs = Vec::new();
        for (ui, u) in self.base.points().iter().enumerate() {
            if ui == xi {
                continue;
            }
            let kept = self.kept_hi(xi, ui);
            arcs.push(Arc::new(
                (x.to_string(), u.clone()),
                Q::zero(),
                kept.clone(),
                true,
                kept.is_one(),
            )?);
        }
        Ok(ArcUnion::new(vertices, arcs))
    }

    /// Grid check that distances inside the fiber over `x` follow the
    /// hedgehog formulas under the spike correspondence `(x,u,t) ->
    /// (spike u, height t)`: heights subtract on a shared spike and add
    /// across spikes. Requires a separating base.
    ///
    /// The correspondence genuinely fails for very short base distances
    /// (two heights can sum past the detour through the far endpoints, at
    /// `t + s > 3/2`), and this predicate reports that honestly.
    pub fn fiber_hedgehog_check(&self, x: &str, k: u32) -> Result<bool> {
        if !self.axioms.separating {
            return Err(Error::Precondition(
                "fiber_hedgehog_check requires a separating base (d > 0 off the diagonal)".into(),
            ));
        }
        let fiber = self.fiber(x)?;
        let samples = fiber.sample_points(k);
        let eps = Q::one();
        let to_hedgehog = |p: &GammaPoint| -> HedgehogPoint {
            match p {
                GammaPoint::Vertex(_) => HedgehogPoint::Center,
                GammaPoint::Interior { to, t, .. } => HedgehogPoint::Spike {
                    spike: to.clone(),
                    t: t.clone(),
                },
            }
        };
        for (i, p) in samples.iter().enumerate() {
            for qpt in &samples[i..] {
                let actual = self.gamma.distance(p, qpt)?;
                let expected = hedgehog_distance(&to_hedgehog(p), &to_hedgehog(qpt), &eps)?;
                if actual != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A certified radius of local constancy for the compression map at an
    /// interior point: every cobweb point closer than `min(t, 1-t)`
    /// compresses to the same vertex. Conservative, not the supremum.
    pub fn local_constancy_radius(&self, p: &GammaPoint) -> Result<Q> {
        self.require_member(p)?;
        match p {
            GammaPoint::Vertex(_) => Err(Error::InvalidPoint(
                "local_constancy_radius is defined off the vertex set".into(),
            )),
            GammaPoint::Interior { t, .. } => Ok(t.clone().min(Q::one() - t)),
        }
    }

    /// The distance function on the quotient formed by the fibers: for a
    /// symmetric base it is the base distance itself.
    pub fn quotient_distance(&self, a: &str, b: &str) -> Result<Q> {
        if !self.axioms.symmetric {
            return Err(Error::Precondition(
                "quotient_distance requires a symmetric base".into(),
            ));
        }
        self.base.distance(a, b)
    }
}

// --- JSON wire format for arc unions ------------------------------------

#[derive(Serialize, Deserialize)]
struct ArcWire {
    edge: (String, String),
    lo: String,
    hi: String,
    lo_open: bool,
    hi_open: bool,
}

#[derive(Serialize, Deserialize)]
struct ArcUnionWire {
    vertices: Vec<String>,
    arcs: Vec<ArcWire>,
}

impl Serialize for ArcUnion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ArcUnionWire {
            vertices: self.vertices.iter().cloned().collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcWire {
                    edge: a.edge.clone(),
                    lo: format_rational(&a.lo),
                    hi: format_rational(&a.hi),
                    lo_open: a.lo_open,
                    hi_open: a.hi_open,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ArcUnion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ArcUnionWire::deserialize(deserializer)?;
        let mut arcs = Vec::with_capacity(wire.arcs.len());
        for a in wire.arcs {
            let lo = parse_rational(&a.lo).map_err(D::Error::custom)?;
            let hi = parse_rational(&a.hi).map_err(D::Error::custom)?;
            arcs.push(Arc::new(a.edge, lo, hi, a.lo_open, a.hi_open).map_err(D::Error::custom)?);
        }
        Ok(ArcUnion::new(wire.vertices.into_iter().collect(), arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn symmetric_two(dab: Q) -> CobwebSpace {
        let base = DistanceSpace::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![Q::zero(), dab.clone()], vec![dab, Q::zero()]],
        )
        .unwrap();
        CobwebSpace::new(base).unwrap()
    }

    fn interior(x: &str, y: &str, t: Q) -> GammaPoint {
        GammaPoint::interior(x, y, t).unwrap()
    }

    #[test]
    fn membership_follows_the_cut_point() {
        let cw = symmetric_two(q(3, 10));
        assert!(cw.contains(&interior("a", "b", q(7, 10))).unwrap());
        assert!(!cw
            .contains(&interior("a", "b", q(7, 10) + q(1, 100)))
            .unwrap());
        assert!(cw.contains(&GammaPoint::vertex("a")).unwrap());
        assert!(cw.contains(&GammaPoint::vertex("b")).unwrap());
    }

    #[test]
    fn membership_with_capped_distance() {
        let cw = symmetric_two(qi(1)); // d >= 1/2, so d1 = 1/2
        assert!(cw.contains(&interior("x", "y", q(1, 2))).is_err()); // unknown labels
        assert!(cw.contains(&interior("a", "b", q(1, 2))).unwrap());
        assert!(!cw
            .contains(&interior("a", "b", q(1, 2) + q(1, 100)))
            .unwrap());
    }

    #[test]
    fn compress_examples() {
        let cw = symmetric_two(q(3, 10));
        assert_eq!(cw.compress(&GammaPoint::vertex("a")).unwrap(), "a");
        assert_eq!(cw.compress(&interior("a", "b", q(1, 2))).unwrap(), "a");
        assert_eq!(cw.compress(&interior("b", "a", q(1, 2))).unwrap(), "b");
        assert!(cw.compress(&interior("a", "b", q(9, 10))).is_err());
    }

    #[test]
    fn cob_ball_vertex_example() {
        // d(a,b)=3/10 symmetric, center a, r=2/5:
        // {a} ∪ (a,b,(0,2/5)) ∪ (b,a,(3/5,7/10]]
        let cw = symmetric_two(q(3, 10));
        let ball = cw.cob_ball(&GammaPoint::vertex("a"), &q(2, 5)).unwrap();
        assert_eq!(ball.vertices, BTreeSet::from(["a".to_string()]));
        assert_eq!(
            ball.arcs,
            vec![
                Arc::new(("a".into(), "b".into()), Q::zero(), q(2, 5), true, true).unwrap(),
                Arc::new(("b".into(), "a".into()), q(3, 5), q(7, 10), true, false).unwrap(),
            ]
        );
    }

    #[test]
    fn cob_ball_small_radius_has_no_terminal_arc() {
        let cw = symmetric_two(q(3, 10));
        let ball = cw.cob_ball(&GammaPoint::vertex("a"), &q(1, 5)).unwrap();
        assert_eq!(ball.arcs.len(), 1);
        assert_eq!(ball.arcs[0].edge, ("a".to_string(), "b".to_string()));
        assert_eq!(ball.arcs[0].hi, q(1, 5));
    }

    #[test]
    fn cob_ball_interior_center() {
        let cw = symmetric_two(q(3, 10));
        let ball = cw.cob_ball(&interior("a", "b", q(1, 2)), &q(1, 4)).unwrap();
        assert!(ball.vertices.is_empty());
        assert_eq!(
            ball.arcs,
            vec![Arc::new(("a".into(), "b".into()), q(1, 4), q(7, 10), true, false).unwrap()]
        );
    }

    #[test]
    fn cob_ball_rejects_large_radius() {
        let cw = symmetric_two(q(3, 10));
        assert!(matches!(
            cw.cob_ball(&GammaPoint::vertex("a"), &q(3, 4)),
            Err(Error::UnsupportedRadius(_))
        ));
        assert!(matches!(
            cw.cob_ball(&interior("a", "b", q(1, 10)), &q(1, 5)),
            Err(Error::UnsupportedRadius(_))
        ));
    }

    #[test]
    fn ball_image_examples() {
        let cw = symmetric_two(q(3, 10));
        let img = cw.ball_image("a", &q(2, 5)).unwrap();
        assert_eq!(img, ["a", "b"].iter().map(|s| s.to_string()).collect());
        let img = cw.ball_image("a", &q(1, 5)).unwrap();
        assert_eq!(img, ["a"].iter().map(|s| s.to_string()).collect());

        // boundary: r = 1/2 with d = 1/2 stays strict
        let cw = symmetric_two(q(1, 2));
        let img = cw.ball_image("a", &q(1, 2)).unwrap();
        assert_eq!(img, ["a"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn fiber_examples() {
        let cw = symmetric_two(q(3, 10));
        let f = cw.fiber("a").unwrap();
        assert_eq!(f.vertices, BTreeSet::from(["a".to_string()]));
        assert_eq!(
            f.arcs,
            vec![Arc::new(("a".into(), "b".into()), Q::zero(), q(7, 10), true, false).unwrap()]
        );
        assert!(f.is_star_at("a"));

        let one = DistanceSpace::from_table(vec!["a".into()], vec![vec![Q::zero()]]).unwrap();
        let cw = CobwebSpace::new(one).unwrap();
        let f = cw.fiber("a").unwrap();
        assert!(f.arcs.is_empty());
        assert_eq!(f.vertices.len(), 1);

        // all distances >= 1/2: spikes of length exactly 1/2
        let cw = symmetric_two(qi(2));
        let f = cw.fiber("a").unwrap();
        assert_eq!(f.arcs[0].hi, q(1, 2));
        assert!(!f.arcs[0].hi_open);
    }

    #[test]
    fn fiber_hedgehog_check_examples() {
        let base = DistanceSpace::from_table(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), qi(1), qi(1)],
                vec![qi(1), qi(0), qi(1)],
                vec![qi(1), qi(1), qi(0)],
            ],
        )
        .unwrap();
        let cw = CobwebSpace::new(base).unwrap();
        assert!(cw.fiber_hedgehog_check("a", 16).unwrap());

        let cw = symmetric_two(q(3, 10));
        assert!(cw.fiber_hedgehog_check("a", 16).unwrap());

        // non-separating base is a precondition error
        let cw = symmetric_two(Q::zero());
        assert!(cw.fiber_hedgehog_check("a", 16).is_err());
    }

    #[test]
    fn fiber_hedgehog_check_detects_long_spike_failure() {
        // with d = 1/10 the kept spikes have length 9/10; two heights of
        // 7/8 sum to 7/4 > 3/2, where the far-endpoint detour is shorter
        let base = DistanceSpace::from_table(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![qi(0), q(1, 10), q(1, 10)],
                vec![q(1, 10), qi(0), q(1, 10)],
                vec![q(1, 10), q(1, 10), qi(0)],
            ],
        )
        .unwrap();
        let cw = CobwebSpace::new(base).unwrap();
        assert!(!cw.fiber_hedgehog_check("a", 16).unwrap());
    }

    #[test]
    fn local_constancy_examples() {
        let cw = symmetric_two(q(1, 20));
        assert_eq!(
            cw.local_constancy_radius(&interior("a", "b", q(1, 2)))
                .unwrap(),
            q(1, 2)
        );
        assert_eq!(
            cw.local_constancy_radius(&interior("a", "b", q(1, 10)))
                .unwrap(),
            q(1, 10)
        );
        assert_eq!(
            cw.local_constancy_radius(&interior("a", "b", q(9, 10)))
                .unwrap(),
            q(1, 10)
        );
        assert!(cw.local_constancy_radius(&GammaPoint::vertex("a")).is_err());
    }

    #[test]
    fn quotient_distance_examples() {
        let cw = symmetric_two(q(3, 10));
        assert_eq!(cw.quotient_distance("a", "b").unwrap(), q(3, 10));
        assert_eq!(cw.quotient_distance("a", "a").unwrap(), Q::zero());

        let base = DistanceSpace::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![Q::zero(), q(1, 3)], vec![q(1, 2), Q::zero()]],
        )
        .unwrap();
        let cw = CobwebSpace::new(base).unwrap();
        assert!(cw.quotient_distance("a", "b").is_err());
    }

    #[test]
    fn arc_union_normalization_and_json() {
        let a1 = Arc::new(("a".into(), "b".into()), Q::zero(), q(1, 2), true, false).unwrap();
        let a2 = Arc::new(("a".into(), "b".into()), q(1, 2), q(7, 10), true, false).unwrap();
        let u = ArcUnion::new(BTreeSet::from(["a".to_string()]), vec![a2, a1]);
        assert_eq!(u.arcs.len(), 1);
        assert_eq!(u.arcs[0].hi, q(7, 10));

        let json = serde_json::to_string(&u).unwrap();
        let back: ArcUnion = serde_json::from_str(&json).unwrap();
        assert_eq!(u, back);

        // two open arcs meeting at an excluded point must not merge
        let a1 = Arc::new(("a".into(), "b".into()), Q::zero(), q(1, 2), true, true).unwrap();
        let a2 = Arc::new(("a".into(), "b".into()), q(1, 2), q(7, 10), true, true).unwrap();
        let u = ArcUnion::new(BTreeSet::new(), vec![a1, a2]);
        assert_eq!(u.arcs.len(), 2);
        assert!(!u.contains_gamma(&interior("a", "b", q(1, 2))));
    }
}
