//! Finite distance spaces: exact distance tables, balls, generated
//! topologies and the axiom predicates that gate the other modules.
//!
//! A distance space only promises `d(x,x) = 0` and `d >= 0`. Symmetry,
//! separation and the triangle inequality are *observations* reported by
//! [`DistanceSpace::check_axioms`], never assumptions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::finite_topology::FiniteTopology;
use crate::rational::{format_rational, parse_nonnegative, q, Q};
use crate::Result;

/// Hard cap for operations that enumerate all subsets of the point set.
const TOPOLOGY_POINT_CAP: usize = 16;

/// A finite distance space: an ordered point set and a dense table of
/// exact non-negative rational distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSpace {
    points: Vec<String>,
    index: BTreeMap<String, usize>,
    dist: Vec<Vec<Q>>,
}

/// Result of [`DistanceSpace::check_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub symmetric: bool,
    pub separating: bool,
    pub triangle: bool,
    pub is_metric: bool,
}

impl DistanceSpace {
    /// Builds a space from a dense table. `dist[i][j]` is the distance from
    /// `points[i]` to `points[j]`.
    pub fn from_table(points: Vec<String>, dist: Vec<Vec<Q>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSpace("point set must be nonempty".into()));
        }
        let n = points.len();
        let mut index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate point label `{p}`")));
            }
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace("distance table must be dense".into()));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::InvalidSpace(format!(
                    "d({0},{0}) must be 0",
                    points[i]
                )));
            }
            for j in 0..n {
                if dist[i][j] < Q::zero() {
                    return Err(Error::InvalidSpace(format!(
                        "d({},{}) is negative",
                        points[i], points[j]
                    )));
                }
            }
        }
        Ok(Self {
            points,
            index,
            dist,
        })
    }

    /// Builds a space from `(from, to) -> distance` entries. Diagonal
    /// entries may be omitted (they default to 0); every off-diagonal
    /// ordered pair must be present.
    pub fn from_entries(
        points: Vec<String>,
        entries: &BTreeMap<(String, String), Q>,
    ) -> Result<Self> {
        let n = points.len();
        let mut table = vec![vec![Q::zero(); n]; n];
        let index: BTreeMap<&str, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        for ((a, b), v) in entries {
            let i = *index
                .get(a.as_str())
                .ok_or_else(|| Error::UnknownPoint(a.clone()))?;
            let j = *index
                .get(b.as_str())
                .ok_or_else(|| Error::UnknownPoint(b.clone()))?;
            table[i][j] = v.clone();
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !entries.contains_key(&(points[i].clone(), points[j].clone())) {
                    return Err(Error::InvalidSpace(format!(
                        "missing distance entry {},{}",
                        points[i], points[j]
                    )));
                }
            }
        }
        Self::from_table(points, table)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Distance by index; panics on out-of-range indices.
    pub fn d(&self, i: usize, j: usize) -> &Q {
        &self.dist[i][j]
    }

    /// Distance by label.
    pub fn distance(&self, from: &str, to: &str) -> Result<Q> {
        Ok(self.dist[self.index_of(from)?][self.index_of(to)?].clone())
    }

    /// Open ball `{z : d(x,z) < r}`, strict inequality. Always contains `x`.
    pub fn ball(&self, x: &str, r: &Q) -> Result<BTreeSet<String>> {
        if *r <= Q::zero() {
            return Err(Error::Precondition(format!(
                "ball radius must be positive, got {}",
                format_rational(r)
            )));
        }
        let i = self.index_of(x)?;
        Ok(self
            .points
            .iter()
            .enumerate()
            .filter(|(j, _)| self.dist[i][*j] < *r)
            .map(|(_, p)| p.clone())
            .collect())
    }

    /// Ball as an index bitmask; used by the topology computations.
    fn ball_mask(&self, i: usize, r: &Q) -> u64 {
        let mut mask = 0u64;
        for j in 0..self.points.len() {
            if self.dist[i][j] < *r {
                mask |= 1 << j;
            }
        }
        mask
    }

    /// Pointwise truncation `d1 = min(d, 1/2)`.
    pub fn truncate_d1(&self) -> TruncatedDistanceSpace {
        let half = q(1, 2);
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|v| v.clone().min(half.clone())).collect())
            .collect();
        TruncatedDistanceSpace {
            space: Self {
                points: self.points.clone(),
                index: self.index.clone(),
                dist,
            },
        }
    }

    /// Topology generated by the distance function: `E` is open iff every
    /// `x` in `E` has some ball around it inside `E`. On a finite space the
    /// smallest ball at `x` is its zero-distance set, so openness reduces
    /// to `{z : d(x,z) = 0} subset of E` for every member.
    pub fn generated_topology(&self) -> Result<FiniteTopology> {
        let n = self.points.len();
        if n > TOPOLOGY_POINT_CAP {
            return Err(Error::SizeLimit(format!(
                "generated_topology enumerates all subsets; {n} points exceeds the cap of {TOPOLOGY_POINT_CAP}"
            )));
        }
        let zero_sets: Vec<u64> = (0..n)
            .map(|i| {
                let mut mask = 0u64;
                for j in 0..n {
                    if self.dist[i][j].is_zero() {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let mut opens = Vec::new();
        for e in 0u64..(1u64 << n) {
            let mut open = true;
            for i in 0..n {
                if e & (1 << i) != 0 && zero_sets[i] & !e != 0 {
                    open = false;
                    break;
                }
            }
            if open {
                opens.push(e);
            }
        }
        // Closed under arbitrary union and intersection by construction.
        Ok(FiniteTopology::from_masks_unchecked(
            self.points.clone(),
            opens,
        ))
    }

    /// Distinct positive distance values from `x`, plus one value above the
    /// maximum. Every ball at `x` is realized at one of these radii.
    fn critical_radii(&self, i: usize) -> Vec<Q> {
        let mut values: BTreeSet<Q> = self.dist[i]
            .iter()
            .filter(|v| !v.is_zero())
            .cloned()
            .collect();
        let above =
            values.iter().next_back().cloned().unwrap_or_else(Q::zero) + Q::from_integer(1.into());
        values.insert(above);
        values.into_iter().collect()
    }

    /// `x` lies in the interior of each of its own balls, checked over the
    /// critical radii (exhaustive for finite spaces).
    pub fn is_well_behaved(&self) -> Result<bool> {
        let top = self.generated_topology()?;
        for i in 0..self.points.len() {
            for r in self.critical_radii(i) {
                let ball = self.ball_mask(i, &r);
                let interior = top.interior_mask(ball);
                if interior & (1 << i) == 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Reports which of the classical metric axioms the table satisfies.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.points.len();
        let mut symmetric = true;
        let mut separating = true;
        let mut triangle = true;
        for i in 0..n {
            for j in 0..n {
                if self.dist[i][j] != self.dist[j][i] {
                    symmetric = false;
                }
                if i != j && self.dist[i][j].is_zero() {
                    separating = false;
                }
            }
        }
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.dist[i][k] > &self.dist[i][j] + &self.dist[j][k] {
                        triangle = false;
                        break 'outer;
                    }
                }
            }
        }
        AxiomReport {
            symmetric,
            separating,
            triangle,
            is_metric: symmetric && separating && triangle,
        }
    }
}

/// A distance space whose table is capped at `1/2`; the edge-trimming rule
/// of the cobweb construction is phrased in terms of this truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDistanceSpace {
    space: DistanceSpace,
}

impl TruncatedDistanceSpace {
    pub fn space(&self) -> &DistanceSpace {
        &self.space
    }

    pub fn d1(&self, i: usize, j: usize) -> &Q {
        self.space.d(i, j)
    }
}

// --- JSON wire format -------------------------------------------------
//
// `{"points":["a","b"],"dist":{"a,b":"1/3","b,a":"1/3"}}`
// Rationals travel as `"p/q"` or `"n"` strings. Omitted diagonal entries
// default to 0; any other omission is an error.

#[derive(Serialize, Deserialize)]
struct DistanceSpaceWire {
    points: Vec<String>,
    dist: BTreeMap<String, String>,
}

impl Serialize for DistanceSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut dist = BTreeMap::new();
        for (i, a) in self.points.iter().enumerate() {
            for (j, b) in self.points.iter().enumerate() {
                if i != j {
                    dist.insert(format!("{a},{b}"), format_rational(&self.dist[i][j]));
                }
            }
        }
        DistanceSpaceWire {
            points: self.points.clone(),
            dist,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DistanceSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = DistanceSpaceWire::deserialize(deserializer)?;
        let mut entries = BTreeMap::new();
        for (key, value) in &wire.dist {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad distance key `{key}`")))?;
            let v = parse_nonnegative(value).map_err(D::Error::custom)?;
            if a == b && !v.is_zero() {
                return Err(D::Error::custom(format!(
                    "diagonal entry `{key}` must be 0"
                )));
            }
            entries.insert((a.to_string(), b.to_string()), v);
        }
        DistanceSpace::from_entries(wire.points, &entries).map_err(D::Error::custom)
    }
}

impl fmt::Display for DistanceSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "distance space on {{{}}}", self.points.join(", "))
    }
}
