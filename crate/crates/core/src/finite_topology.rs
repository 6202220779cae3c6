//! Finite topological spaces as explicit open-set families, and the map
//! predicates (continuous, quotient, hereditarily quotient, monotone)
//! decided by direct quantifier checks over those families.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// Topologies are stored as subsets encoded in machine words.
const POINT_CAP: usize = 20;
/// Exhaustive enumeration of all labeled topologies is only tractable for
/// very small point counts; the count at 4 labeled points is already 355.
const ENUMERATION_CAP: usize = 4;

/// A finite topological space: a labeled point set plus the full family of
/// open sets, closed under union and intersection and containing the empty
/// set and the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    points: Vec<String>,
    index: BTreeMap<String, usize>,
    opens: Vec<u64>,
}

impl FiniteTopology {
    /// Validating constructor from label subsets.
    pub fn new(points: Vec<String>, opens: &[BTreeSet<String>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(opens.len());
        let proto = Self::from_masks_unchecked(points, Vec::new());
        for subset in opens {
            masks.push(proto.mask_of(subset.iter().map(|s| s.as_str()))?);
        }
        Self::from_masks(proto.points, masks)
    }

    /// Validating constructor from bitmasks.
    pub fn from_masks(points: Vec<String>, mut opens: Vec<u64>) -> Result<Self> {
        if points.len() > POINT_CAP {
            return Err(Error::SizeLimit(format!(
                "topology on {} points exceeds the cap of {POINT_CAP}",
                points.len()
            )));
        }
        let full = full_mask(points.len());
        opens.sort_unstable();
        opens.dedup();
        if opens.iter().any(|m| m & !full != 0) {
            return Err(Error::InvalidSpace(
                "open set contains unknown points".into(),
            ));
        }
        if !opens.contains(&0) || !opens.contains(&full) {
            return Err(Error::InvalidSpace(
                "opens must contain the empty set and the whole space".into(),
            ));
        }
        let member: BTreeSet<u64> = opens.iter().copied().collect();
        for (i, a) in opens.iter().enumerate() {
            for b in &opens[i + 1..] {
                if !member.contains(&(a | b)) {
                    return Err(Error::InvalidSpace(
                        "opens are not closed under union".into(),
                    ));
                }
                if !member.contains(&(a & b)) {
                    return Err(Error::InvalidSpace(
                        "opens are not closed under intersection".into(),
                    ));
                }
            }
        }
        Ok(Self::from_masks_unchecked(points, opens))
    }

    /// Constructor for families known to be topologies (generated
    /// topologies, quotient topologies, enumeration output).
    pub(crate) fn from_masks_unchecked(points: Vec<String>, mut opens: Vec<u64>) -> Self {
        opens.sort_unstable();
        opens.dedup();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Self {
            points,
            index,
            opens,
        }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.points.len())
    }

    pub fn opens_count(&self) -> usize {
        self.opens.len()
    }

    pub fn opens_masks(&self) -> &[u64] {
        &self.opens
    }

    pub fn is_open_mask(&self, mask: u64) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    /// Encodes a label subset as a bitmask.
    pub fn mask_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<u64> {
        let mut mask = 0u64;
        for l in labels {
            mask |= 1 << self.index_of(l)?;
        }
        Ok(mask)
    }

    /// Decodes a bitmask back into sorted labels.
    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        let mut out: Vec<String> = (0..self.points.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.points[i].clone())
            .collect();
        out.sort();
        out
    }

    pub fn opens_as_labels(&self) -> Vec<Vec<String>> {
        self.opens.iter().map(|m| self.labels_of(*m)).collect()
    }

    /// Union of all opens contained in `mask`.
    pub fn interior_mask(&self, mask: u64) -> u64 {
        let mut acc = 0u64;
        for o in &self.opens {
            if o & !mask == 0 {
                acc |= o;
            }
        }
        acc
    }

    /// Interior of a label subset.
    pub fn interior(&self, subset: &BTreeSet<String>) -> Result<BTreeSet<String>> {
        let mask = self.mask_of(subset.iter().map(|s| s.as_str()))?;
        Ok(self
            .labels_of(self.interior_mask(mask))
            .into_iter()
            .collect())
    }

    /// Relative opens of the subspace carried by `mask`.
    fn relative_opens(&self, mask: u64) -> BTreeSet<u64> {
        self.opens.iter().map(|o| o & mask).collect()
    }

    /// A subset is connected iff it cannot be split into two disjoint
    /// nonempty relatively-open parts. The relative opens form a topology,
    /// so scanning them for a clopen proper part is exhaustive.
    pub fn is_connected_mask(&self, mask: u64) -> bool {
        let rel = self.relative_opens(mask);
        for u in &rel {
            if *u != 0 && *u != mask && rel.contains(&(mask & !u)) {
                return false;
            }
        }
        true
    }

    pub fn is_connected(&self, subset: &BTreeSet<String>) -> Result<bool> {
        let mask = self.mask_of(subset.iter().map(|s| s.as_str()))?;
        Ok(self.is_connected_mask(mask))
    }

    /// Subspace topology on the points selected by `mask`, with the point
    /// labels preserved.
    pub fn subspace(&self, mask: u64) -> FiniteTopology {
        let kept: Vec<usize> = (0..self.points.len())
            .filter(|i| mask & (1 << i) != 0)
            .collect();
        let compress = |m: u64| -> u64 {
            let mut out = 0u64;
            for (new, old) in kept.iter().enumerate() {
                if m & (1 << old) != 0 {
                    out |= 1 << new;
                }
            }
            out
        };
        let points = kept.iter().map(|i| self.points[*i].clone()).collect();
        let opens = self.opens.iter().map(|o| compress(o & mask)).collect();
        FiniteTopology::from_masks_unchecked(points, opens)
    }
}

/// A total function between two finite topological spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceMap {
    domain: FiniteTopology,
    codomain: FiniteTopology,
    assignment: Vec<usize>,
}

impl SpaceMap {
    pub fn new(
        domain: FiniteTopology,
        codomain: FiniteTopology,
        map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut assignment = vec![usize::MAX; domain.len()];
        for (from, to) in map {
            let i = domain.index_of(from)?;
            assignment[i] = codomain.index_of(to)?;
        }
        if assignment.contains(&usize::MAX) {
            return Err(Error::InvalidSpace(
                "assignment must cover every domain point".into(),
            ));
        }
        Ok(Self {
            domain,
            codomain,
            assignment,
        })
    }

    /// Constructor from an index table: `assignment[i]` is the codomain
    /// index of domain point `i`.
    pub fn from_indices(
        domain: FiniteTopology,
        codomain: FiniteTopology,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != domain.len() || assignment.iter().any(|v| *v >= codomain.len()) {
            return Err(Error::InvalidSpace("assignment table out of range".into()));
        }
        Ok(Self {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn domain(&self) -> &FiniteTopology {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteTopology {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image_mask(&self, domain_mask: u64) -> u64 {
        let mut out = 0u64;
        for (i, y) in self.assignment.iter().enumerate() {
            if domain_mask & (1 << i) != 0 {
                out |= 1 << y;
            }
        }
        out
    }

    pub fn preimage_mask(&self, codomain_mask: u64) -> u64 {
        let mut out = 0u64;
        for (i, y) in self.assignment.iter().enumerate() {
            if codomain_mask & (1 << y) != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn fiber_mask(&self, y: usize) -> u64 {
        self.preimage_mask(1 << y)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask(self.domain.full_mask()) == self.codomain.full_mask()
    }

    fn require_surjective(&self, what: &str) -> Result<()> {
        if self.is_surjective() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} is defined here for surjections only"
            )))
        }
    }

    /// Preimage of every codomain open is open.
    pub fn is_continuous(&self) -> bool {
        self.codomain
            .opens_masks()
            .iter()
            .all(|o| self.domain.is_open_mask(self.preimage_mask(*o)))
    }

    /// For every codomain subset: open preimage implies open set.
    pub fn is_quotient(&self) -> Result<bool> {
        self.require_surjective("is_quotient")?;
        let n = self.codomain.len();
        for a in 0u64..(1u64 << n) {
            if self.domain.is_open_mask(self.preimage_mask(a)) && !self.codomain.is_open_mask(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every open set around a whole fiber maps to a neighborhood of the
    /// fiber's point: `f^{-1}(y) subset U` implies `y in Int(f(U))`.
    pub fn is_hereditarily_quotient(&self) -> Result<bool> {
        self.require_surjective("is_hereditarily_quotient")?;
        for y in 0..self.codomain.len() {
            let fiber = self.fiber_mask(y);
            for u in self.domain.opens_masks() {
                if fiber & !u == 0 {
                    let img = self.image_mask(*u);
                    if self.codomain.interior_mask(img) & (1 << y) == 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every fiber is connected; empty fibers count as connected.
    pub fn is_monotone(&self) -> bool {
        (0..self.codomain.len()).all(|y| self.domain.is_connected_mask(self.fiber_mask(y)))
    }

    /// For every codomain subset `Z`, the restriction
    /// `f|f^{-1}(Z): f^{-1}(Z) -> Z` (subspace topologies on both sides)
    /// is quotient.
    pub fn restriction_quotient_all(&self) -> Result<bool> {
        self.require_surjective("restriction_quotient_all")?;
        let full = self.codomain.full_mask();
        let mut z = full;
        loop {
            let pre_z = self.preimage_mask(z);
            let dom_rel = self.domain.relative_opens(pre_z);
            let cod_rel = self.codomain.relative_opens(z);
            // enumerate subsets A of Z
            let mut a = z;
            loop {
                if dom_rel.contains(&self.preimage_mask(a)) && !cod_rel.contains(&a) {
                    return Ok(false);
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & z;
            }
            if z == 0 {
                break;
            }
            z = (z - 1) & full;
        }
        Ok(true)
    }
}

/// Finest topology on `codomain_points` making `assignment` quotient:
/// the opens are exactly the subsets with open preimage.
pub fn quotient_topology(
    domain: &FiniteTopology,
    codomain_points: &[String],
    assignment: &BTreeMap<String, String>,
) -> Result<FiniteTopology> {
    if codomain_points.len() > POINT_CAP {
        return Err(Error::SizeLimit(format!(
            "quotient_topology enumerates all subsets; {} points exceeds the cap of {POINT_CAP}",
            codomain_points.len()
        )));
    }
    let mut cod_index = BTreeMap::new();
    for (i, p) in codomain_points.iter().enumerate() {
        if cod_index.insert(p.clone(), i).is_some() {
            return Err(Error::InvalidSpace(format!("duplicate point label `{p}`")));
        }
    }
    let mut table = vec![usize::MAX; domain.len()];
    for (from, to) in assignment {
        let i = domain.index_of(from)?;
        table[i] = *cod_index
            .get(to)
            .ok_or_else(|| Error::UnknownPoint(to.clone()))?;
    }
    if table.contains(&usize::MAX) {
        return Err(Error::InvalidSpace(
            "assignment must cover every domain point".into(),
        ));
    }
    let preimage = |a: u64| -> u64 {
        let mut out = 0u64;
        for (i, y) in table.iter().enumerate() {
            if a & (1 << y) != 0 {
                out |= 1 << i;
            }
        }
        out
    };
    let opens = (0u64..(1u64 << codomain_points.len()))
        .filter(|a| domain.is_open_mask(preimage(*a)))
        .collect();
    Ok(FiniteTopology::from_masks_unchecked(
        codomain_points.to_vec(),
        opens,
    ))
}

/// All topologies on `n` labeled points (`a`, `b`, ...), produced lazily.
/// Refuses `n` beyond 4: the labeled counts 1, 1, 4, 29, 355 grow too fast
/// for exhaustive downstream sweeps after that.
pub fn enumerate_topologies(n: usize) -> Result<impl Iterator<Item = FiniteTopology>> {
    if n > ENUMERATION_CAP {
        return Err(Error::SizeLimit(format!(
            "enumerate_topologies supports at most {ENUMERATION_CAP} points, got {n}"
        )));
    }
    let labels: Vec<String> = ["a", "b", "c", "d"][..n]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let subset_count = 1u32 << n; // subsets of the point set
    let family_count: u64 = 1u64 << subset_count; // families of subsets
    let full = full_mask(n);
    let required = (1u64 << 0) | (1u64 << full); // empty set and whole space
    let iter = (0..family_count).filter_map(move |family| {
        if family & required != required {
            return None;
        }
        let members: Vec<u64> = (0..subset_count as u64)
            .filter(|s| family & (1u64 << s) != 0)
            .collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if family & (1u64 << (a | b)) == 0 || family & (1u64 << (a & b)) == 0 {
                    return None;
                }
            }
        }
        Some(FiniteTopology::from_masks_unchecked(
            labels.clone(),
            members,
        ))
    });
    Ok(iter)
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (1u64 << n) - 1
    }
}

// --- JSON wire formats -------------------------------------------------
//
// Topology: `{"points":["a","b"],"opens":[[],["a"],["a","b"]]}`
// Map:      `{"domain":{...},"codomain":{...},"map":{"a":"x","b":"x"}}`

#[derive(Serialize, Deserialize)]
struct TopologyWire {
    points: Vec<String>,
    opens: Vec<Vec<String>>,
}

impl Serialize for FiniteTopology {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TopologyWire {
            points: self.points.clone(),
            opens: self.opens_as_labels(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteTopology {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = TopologyWire::deserialize(deserializer)?;
        let opens: Vec<BTreeSet<String>> = wire
            .opens
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
        FiniteTopology::new(wire.points, &opens).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceMapWire {
    domain: FiniteTopology,
    codomain: FiniteTopology,
    map: BTreeMap<String, String>,
}

impl Serialize for SpaceMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map = self
            .assignment
            .iter()
            .enumerate()
            .map(|(i, y)| {
                (
                    self.domain.points()[i].clone(),
                    self.codomain.points()[*y].clone(),
                )
            })
            .collect();
        SpaceMapWire {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            map,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpaceMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SpaceMapWire::deserialize(deserializer)?;
        SpaceMap::new(wire.domain, wire.codomain, &wire.map).map_err(D::Error::custom)
    }
}
