//! The complete-oriented-graph metric on Γ(X).
//!
//! Γ(X) joins every ordered pair of distinct vertices by its own unit
//! edge; `[x,y]` and `[y,x]` share only their endpoints. The distance
//! between two points is the shortest way of traveling along edges. The
//! closed form implemented here routes through edge endpoints (any two
//! distinct vertices are one unit apart), and a discretized shortest-path
//! oracle validates it independently.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{format_rational, parse_rational, Q};
use crate::Result;

/// A point of Γ(X): a vertex, or an interior point `(x, y, t)` of the
/// oriented edge `[x,y]` with `0 < t < 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaPoint {
    Vertex(String),
    Interior { from: String, to: String, t: Q },
}

impl GammaPoint {
    pub fn vertex(label: impl Into<String>) -> Self {
        GammaPoint::Vertex(label.into())
    }

    /// Validated interior-point constructor.
    pub fn interior(from: impl Into<String>, to: impl Into<String>, t: Q) -> Result<Self> {
        let (from, to) = (from.into(), to.into());
        if from == to {
            return Err(Error::InvalidPoint(format!(
                "edge endpoints must be distinct, got [{from},{to}]"
            )));
        }
        if t <= Q::zero() || t >= Q::one() {
            return Err(Error::InvalidPoint(format!(
                "interior parameter must lie in (0,1), got {}",
                format_rational(&t)
            )));
        }
        Ok(GammaPoint::Interior { from, to, t })
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, GammaPoint::Vertex(_))
    }
}

/// A point of a hedgehog with spikes of length `eps`: the center, or a
/// point at height `t` in `(0, eps]` on a named spike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HedgehogPoint {
    Center,
    Spike { spike: String, t: Q },
}

/// Distance in a hedgehog with spikes of length `eps`: heights subtract on
/// a shared spike and add across different spikes; the center sits at
/// height zero on every spike.
pub fn hedgehog_distance(p: &HedgehogPoint, q: &HedgehogPoint, eps: &Q) -> Result<Q> {
    let check = |pt: &HedgehogPoint| -> Result<()> {
        if let HedgehogPoint::Spike { t, .. } = pt {
            if *t <= Q::zero() || t > eps {
                return Err(Error::InvalidPoint(format!(
                    "spike height {} outside (0, {}]",
                    format_rational(t),
                    format_rational(eps)
                )));
            }
        }
        Ok(())
    };
    check(p)?;
    check(q)?;
    Ok(match (p, q) {
        (HedgehogPoint::Center, HedgehogPoint::Center) => Q::zero(),
        (HedgehogPoint::Center, HedgehogPoint::Spike { t, .. })
        | (HedgehogPoint::Spike { t, .. }, HedgehogPoint::Center) => t.clone(),
        (HedgehogPoint::Spike { spike: a, t }, HedgehogPoint::Spike { spike: b, t: s }) => {
            if a == b {
                (t - s).abs()
            } else {
                t + s
            }
        }
    })
}

/// Borrowed view of a graph point over an arbitrary vertex type; the
/// closed form below is shared between Γ over labels and the iterated
/// cobweb levels, where vertices are themselves structured points.
pub(crate) enum GenPoint<'a, V> {
    Vertex(&'a V),
    Interior(&'a V, &'a V, &'a Q),
}

/// Exact Γ-distance between two points over the same vertex set.
///
/// Any path between points alternates travel inside edges with hops at
/// shared endpoints, and two distinct vertices are always joined directly
/// at cost 1, so routing deeper than "exit one edge, hop at most once,
/// enter the other" never improves. The remaining candidates are the
/// same-edge straight segment and the four endpoint routes.
pub(crate) fn closed_form_distance<V: PartialEq>(p: &GenPoint<'_, V>, q: &GenPoint<'_, V>) -> Q {
    fn exits<'a, V>(pt: &GenPoint<'a, V>) -> Vec<(&'a V, Q)> {
        match pt {
            GenPoint::Vertex(v) => vec![(*v, Q::zero())],
            GenPoint::Interior(a, b, t) => {
                vec![(*a, (*t).clone()), (*b, Q::one() - *t)]
            }
        }
    }
    let mut best: Option<Q> = None;
    let mut consider = |candidate: Q| match &best {
        Some(b) if *b <= candidate => {}
        _ => best = Some(candidate),
    };
    if let (GenPoint::Interior(a, b, t), GenPoint::Interior(c, d, s)) = (p, q) {
        if a == c && b == d {
            consider((*t - *s).abs());
        }
    }
    for (ep, ecost) in exits(p) {
        for (eq, qcost) in exits(q) {
            let hop = if ep == eq { Q::zero() } else { Q::one() };
            consider(&ecost + hop + &qcost);
        }
    }
    best.expect("at least one endpoint route always exists")
}

/// The complete oriented graph over a finite labeled vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSpace {
    vertices: Vec<String>,
}

impl GammaSpace {
    pub fn new(vertices: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidSpace(format!("duplicate vertex `{v}`")));
            }
        }
        if vertices.is_empty() {
            return Err(Error::InvalidSpace("vertex set must be nonempty".into()));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    /// Checks the point is structurally valid over this vertex set.
    pub fn validate(&self, p: &GammaPoint) -> Result<()> {
        match p {
            GammaPoint::Vertex(v) => {
                self.vertex_index(v)?;
            }
            GammaPoint::Interior { from, to, t } => {
                self.vertex_index(from)?;
                self.vertex_index(to)?;
                if from == to {
                    return Err(Error::InvalidPoint("degenerate edge".into()));
                }
                if *t <= Q::zero() || *t >= Q::one() {
                    return Err(Error::InvalidPoint(format!(
                        "interior parameter {} outside (0,1)",
                        format_rational(t)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The auxiliary edge distance: defined only for pairs sharing an
    /// edge. `None` is "undefined", a value rather than an error.
    pub fn aux_r(&self, p: &GammaPoint, q: &GammaPoint) -> Result<Option<Q>> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(match (p, q) {
            (GammaPoint::Vertex(x), GammaPoint::Vertex(y)) => {
                Some(if x == y { Q::zero() } else { Q::one() })
            }
            (
                GammaPoint::Interior { from, to, t },
                GammaPoint::Interior {
                    from: f2,
                    to: t2,
                    t: s,
                },
            ) => {
                if from == f2 && to == t2 {
                    Some((t - s).abs())
                } else {
                    None
                }
            }
            (GammaPoint::Vertex(v), GammaPoint::Interior { from, to, t })
            | (GammaPoint::Interior { from, to, t }, GammaPoint::Vertex(v)) => {
                if v == from {
                    Some(t.clone())
                } else if v == to {
                    Some(Q::one() - t)
                } else {
                    None
                }
            }
        })
    }

    /// Exact Γ-distance via the endpoint-routing closed form.
    pub fn distance(&self, p: &GammaPoint, q: &GammaPoint) -> Result<Q> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(closed_form_distance(&gen_point(p), &gen_point(q)))
    }

    /// Independent validation oracle: shortest path on the finite graph
    /// whose nodes are the vertices plus all edge points at multiples of
    /// `1/k`, with consecutive-node weights taken from [`Self::aux_r`].
    /// Both endpoints must lie on the grid; off-grid parameters are
    /// rejected rather than snapped.
    pub fn oracle_distance(&self, p: &GammaPoint, q: &GammaPoint, k: u32) -> Result<Q> {
        self.validate(p)?;
        self.validate(q)?;
        if k < 2 {
            return Err(Error::Precondition(format!("grid granularity k={k} < 2")));
        }
        let kq = Q::from_integer(k.into());
        let on_grid = |pt: &GammaPoint| -> Result<()> {
            if let GammaPoint::Interior { t, .. } = pt {
                if !(t * &kq).is_integer() {
                    return Err(Error::Precondition(format!(
                        "parameter {} is not a multiple of 1/{k}",
                        format_rational(t)
                    )));
                }
            }
            Ok(())
        };
        on_grid(p)?;
        on_grid(q)?;

        let n = self.vertices.len();
        let steps = (k - 1) as usize; // interior grid nodes per edge
                                      // node ids: vertices 0..n, then (k-1) nodes per ordered pair
        let pair_base = |i: usize, j: usize| -> usize {
            let pair = i * (n - 1) + if j < i { j } else { j - 1 };
            n + pair * steps
        };
        let node_count = n + n * (n - 1) * steps;
        let node_point = |id: usize| -> GammaPoint {
            if id < n {
                GammaPoint::Vertex(self.vertices[id].clone())
            } else {
                let rest = id - n;
                let pair = rest / steps;
                let step = rest % steps + 1;
                let i = pair / (n - 1);
                let jj = pair % (n - 1);
                let j = if jj < i { jj } else { jj + 1 };
                GammaPoint::Interior {
                    from: self.vertices[i].clone(),
                    to: self.vertices[j].clone(),
                    t: Q::new((step as i64).into(), (k as i64).into()),
                }
            }
        };
        let node_id = |pt: &GammaPoint| -> usize {
            match pt {
                GammaPoint::Vertex(v) => self.vertices.iter().position(|x| x == v).unwrap(),
                GammaPoint::Interior { from, to, t } => {
                    let i = self.vertices.iter().position(|x| x == from).unwrap();
                    let j = self.vertices.iter().position(|x| x == to).unwrap();
                    let step = (t * &kq).to_integer();
                    let step: usize = step.try_into().unwrap();
                    pair_base(i, j) + step - 1
                }
            }
        };
        let neighbors = |id: usize| -> Vec<usize> {
            let mut out = Vec::new();
            if id < n {
                for j in 0..n {
                    if j != id {
                        out.push(pair_base(id, j)); // (id, j, 1/k)
                        out.push(pair_base(j, id) + steps - 1); // (j, id, (k-1)/k)
                    }
                }
            } else {
                let rest = id - n;
                let pair = rest / steps;
                let step = rest % steps + 1;
                let i = pair / (n - 1);
                let jj = pair % (n - 1);
                let j = if jj < i { jj } else { jj + 1 };
                out.push(if step == 1 { i } else { id - 1 });
                out.push(if step == steps { j } else { id + 1 });
            }
            out
        };

        let start = node_id(p);
        let goal = node_id(q);
        let mut dist: Vec<Option<Q>> = vec![None; node_count];
        let mut heap: BinaryHeap<(Reverse<Q>, usize)> = BinaryHeap::new();
        dist[start] = Some(Q::zero());
        heap.push((Reverse(Q::zero()), start));
        while let Some((Reverse(cost), node)) = heap.pop() {
            if node == goal {
                return Ok(cost);
            }
            if dist[node].as_ref().is_some_and(|d| *d < cost) {
                continue;
            }
            let here = node_point(node);
            for next in neighbors(node) {
                let there = node_point(next);
                let w = self
                    .aux_r(&here, &there)?
                    .expect("consecutive grid nodes share an edge");
                let cand = &cost + &w;
                if dist[next].as_ref().is_none_or(|d| cand < *d) {
                    dist[next] = Some(cand.clone());
                    heap.push((Reverse(cand), next));
                }
            }
        }
        unreachable!("the grid graph is connected")
    }
}

fn gen_point(p: &GammaPoint) -> GenPoint<'_, String> {
    match p {
        GammaPoint::Vertex(v) => GenPoint::Vertex(v),
        GammaPoint::Interior { from, to, t } => GenPoint::Interior(from, to, t),
    }
}

// --- JSON wire format: {"v":"x"} or {"e":["x","y"],"t":"1/4"} ----------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GammaPointWire {
    Vertex { v: String },
    Interior { e: (String, String), t: String },
}

impl Serialize for GammaPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GammaPoint::Vertex(v) => GammaPointWire::Vertex { v: v.clone() },
            GammaPoint::Interior { from, to, t } => GammaPointWire::Interior {
                e: (from.clone(), to.clone()),
                t: format_rational(t),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GammaPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match GammaPointWire::deserialize(deserializer)? {
            GammaPointWire::Vertex { v } => Ok(GammaPoint::Vertex(v)),
            GammaPointWire::Interior { e, t } => {
                let t = parse_rational(&t).map_err(D::Error::custom)?;
                GammaPoint::interior(e.0, e.1, t).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn gamma(labels: &[&str]) -> GammaSpace {
        GammaSpace::new(labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn interior(x: &str, y: &str, t: Q) -> GammaPoint {
        GammaPoint::interior(x, y, t).unwrap()
    }

    #[test]
    fn aux_r_cases() {
        let g = gamma(&["x", "y", "u", "v"]);
        let vx = GammaPoint::vertex("x");
        let vy = GammaPoint::vertex("y");
        assert_eq!(g.aux_r(&vx, &vx).unwrap(), Some(Q::zero()));
        assert_eq!(g.aux_r(&vx, &vy).unwrap(), Some(Q::one()));
        assert_eq!(
            g.aux_r(&interior("x", "y", q(1, 4)), &interior("x", "y", q(3, 4)))
                .unwrap(),
            Some(q(1, 2))
        );
        assert_eq!(
            g.aux_r(&interior("x", "y", q(1, 4)), &interior("u", "v", q(1, 2)))
                .unwrap(),
            None
        );
        // opposite orientations are different edges
        assert_eq!(
            g.aux_r(&interior("x", "y", q(1, 4)), &interior("y", "x", q(1, 4)))
                .unwrap(),
            None
        );
        assert_eq!(
            g.aux_r(&vx, &interior("x", "y", q(1, 4))).unwrap(),
            Some(q(1, 4))
        );
        assert_eq!(
            g.aux_r(&vy, &interior("x", "y", q(1, 4))).unwrap(),
            Some(q(3, 4))
        );
    }

    #[test]
    fn distance_examples() {
        let g = gamma(&["a", "b", "c", "e", "x", "y", "z"]);
        // same edge: straight segment
        assert_eq!(
            g.distance(&interior("x", "y", q(1, 4)), &interior("x", "y", q(3, 4)))
                .unwrap(),
            q(1, 2)
        );
        // disjoint edges, midpoints: half + hop + half
        assert_eq!(
            g.distance(&interior("a", "b", q(1, 2)), &interior("c", "e", q(1, 2)))
                .unwrap(),
            q(2, 1)
        );
        // shared vertex route
        assert_eq!(
            g.distance(&interior("x", "y", q(3, 4)), &interior("y", "z", q(3, 4)))
                .unwrap(),
            Q::one()
        );
        // vertices
        assert_eq!(
            g.distance(&GammaPoint::vertex("x"), &GammaPoint::vertex("y"))
                .unwrap(),
            Q::one()
        );
        assert_eq!(
            g.distance(&GammaPoint::vertex("x"), &GammaPoint::vertex("x"))
                .unwrap(),
            Q::zero()
        );
    }

    #[test]
    fn distance_rejects_unknown_vertices() {
        let g = gamma(&["a", "b"]);
        assert!(g
            .distance(&GammaPoint::vertex("zz"), &GammaPoint::vertex("a"))
            .is_err());
    }

    #[test]
    fn oracle_agrees_on_examples() {
        let g = gamma(&["a", "b", "c", "e"]);
        let p = interior("a", "b", q(1, 4));
        let qq = interior("a", "b", q(3, 4));
        assert_eq!(g.oracle_distance(&p, &qq, 4).unwrap(), q(1, 2));

        let p = interior("a", "b", q(1, 2));
        let qq = interior("c", "e", q(1, 2));
        assert_eq!(g.oracle_distance(&p, &qq, 64).unwrap(), q(2, 1));

        assert_eq!(
            g.oracle_distance(&GammaPoint::vertex("a"), &GammaPoint::vertex("b"), 8)
                .unwrap(),
            Q::one()
        );
    }

    #[test]
    fn oracle_rejects_off_grid() {
        let g = gamma(&["a", "b"]);
        let p = interior("a", "b", q(1, 3));
        assert!(g.oracle_distance(&p, &GammaPoint::vertex("a"), 4).is_err());
    }

    #[test]
    fn hedgehog_cases() {
        let eps = q(1, 2);
        let sp = |s: &str, t: Q| HedgehogPoint::Spike { spike: s.into(), t };
        assert_eq!(
            hedgehog_distance(&sp("u", q(1, 5)), &sp("u", q(2, 5)), &eps).unwrap(),
            q(1, 5)
        );
        assert_eq!(
            hedgehog_distance(&sp("u", q(1, 5)), &sp("w", q(3, 10)), &eps).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            hedgehog_distance(&HedgehogPoint::Center, &sp("u", q(1, 5)), &eps).unwrap(),
            q(1, 5)
        );
        // height above eps is rejected
        assert!(hedgehog_distance(&sp("u", q(3, 4)), &HedgehogPoint::Center, &eps).is_err());
    }

    #[test]
    fn gamma_point_json() {
        let v: GammaPoint = serde_json::from_str(r#"{"v":"x"}"#).unwrap();
        assert_eq!(v, GammaPoint::vertex("x"));
        let i: GammaPoint = serde_json::from_str(r#"{"e":["x","y"],"t":"1/4"}"#).unwrap();
        assert_eq!(i, interior("x", "y", q(1, 4)));
        assert_eq!(
            serde_json::to_string(&i).unwrap(),
            r#"{"e":["x","y"],"t":"1/4"}"#
        );
        // t outside (0,1) rejected
        assert!(serde_json::from_str::<GammaPoint>(r#"{"e":["x","y"],"t":"3/2"}"#).is_err());
    }
}
