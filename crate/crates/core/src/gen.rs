//! Deterministic seeded generators for the structures the property suites
//! sweep over: distance spaces, metric spaces, topologies, maps,
//! neighborhood systems, graph points and tower threads.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cobweb::CobwebSpace;
use crate::distance_core::DistanceSpace;
use crate::finite_topology::{FiniteTopology, SpaceMap};
use crate::gallery::{NeighborhoodSystem, OmilSpace};
use crate::graph_metric::GammaPoint;
use crate::rational::{q, Q};
use crate::tower::{LevelPoint, Thread, Tower};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Random rational from the grid `{num/den : lo_num <= num <= hi_num}`.
fn grid_q(rng: &mut ChaCha8Rng, lo_num: i64, hi_num: i64, den: i64) -> Q {
    q(rng.random_range(lo_num..=hi_num), den)
}

/// A random distance space: zero diagonal, otherwise arbitrary grid
/// rationals in `[0, 2]`, possibly asymmetric, with occasional zero
/// off-diagonal entries.
pub fn distance_space(rng: &mut ChaCha8Rng, n: usize) -> DistanceSpace {
    let dens = [2i64, 3, 4, 5, 8, 10, 16, 20];
    let mut table = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let den = dens[rng.random_range(0..dens.len())];
            // one in eight entries is a zero distance
            let v = if rng.random_range(0..8u8) == 0 {
                Q::zero()
            } else {
                grid_q(rng, 1, 2 * den, den)
            };
            table[i][j] = v;
        }
    }
    DistanceSpace::from_table(labels(n), table).expect("generated table is valid")
}

/// A random symmetric separating space satisfying the triangle inequality
/// exactly: symmetric grid weights shrunk by a shortest-path closure.
/// Entries start at `min_num/20` and the closure never drops below that.
pub fn metric_space(rng: &mut ChaCha8Rng, n: usize, min_num: i64) -> DistanceSpace {
    let mut table = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = grid_q(rng, min_num, 40, 20);
            table[i][j] = v.clone();
            table[j][i] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let via = &table[i][k] + &table[k][j];
                if i != k && j != k && via < table[i][j] {
                    table[i][j] = via;
                }
            }
        }
    }
    let space = DistanceSpace::from_table(labels(n), table).expect("closure keeps validity");
    debug_assert!(space.check_axioms().is_metric);
    space
}

/// A random separating (possibly asymmetric) space with all off-diagonal
/// distances at least `min_num/20`.
pub fn separating_space(rng: &mut ChaCha8Rng, n: usize, min_num: i64) -> DistanceSpace {
    let mut table = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                table[i][j] = grid_q(rng, min_num, 40, 20);
            }
        }
    }
    DistanceSpace::from_table(labels(n), table).expect("generated table is valid")
}

/// A random topology: the closure of a few random subsets under union and
/// intersection, together with the empty set and the whole space.
pub fn topology(rng: &mut ChaCha8Rng, n: usize) -> FiniteTopology {
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut family: BTreeSet<u64> = BTreeSet::from([0, full]);
    let seeds = rng.random_range(0..=n + 1);
    for _ in 0..seeds {
        family.insert(rng.random_range(0..=full));
    }
    loop {
        let items: Vec<u64> = family.iter().copied().collect();
        let before = family.len();
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                family.insert(a | b);
                family.insert(a & b);
            }
        }
        if family.len() == before {
            break;
        }
    }
    FiniteTopology::from_masks_unchecked(labels(n), family.into_iter().collect())
}

/// A random map between two given spaces; with `surjective` the codomain
/// is covered (requires the domain to be at least as large).
pub fn space_map(
    rng: &mut ChaCha8Rng,
    domain: &FiniteTopology,
    codomain: &FiniteTopology,
    surjective: bool,
) -> Option<SpaceMap> {
    let (nd, nc) = (domain.len(), codomain.len());
    if nc == 0 || (surjective && nd < nc) {
        return None;
    }
    let mut assignment: Vec<usize> = (0..nd).map(|_| rng.random_range(0..nc)).collect();
    if surjective {
        let mut slots: Vec<usize> = (0..nd).collect();
        slots.shuffle(rng);
        for (y, slot) in slots.into_iter().take(nc).enumerate() {
            assignment[slot] = y;
        }
    }
    SpaceMap::from_indices(domain.clone(), codomain.clone(), assignment).ok()
}

/// A random nested neighborhood system on `n` points with `levels` levels.
pub fn neighborhood_system(rng: &mut ChaCha8Rng, n: usize, levels: usize) -> NeighborhoodSystem {
    let pts = labels(n);
    let mut sets = BTreeMap::new();
    for (i, label) in pts.iter().enumerate() {
        let mut families: Vec<BTreeSet<String>> = Vec::with_capacity(levels);
        let mut current = BTreeSet::from([pts[i].clone()]);
        for _ in 0..levels {
            // grow when walking down from the deepest level
            for (j, other) in pts.iter().enumerate() {
                if j != i && rng.random_range(0..3u8) == 0 {
                    current.insert(other.clone());
                }
            }
            families.push(current.clone());
        }
        families.reverse(); // E_1 is the largest
        sets.insert(label.clone(), families);
    }
    NeighborhoodSystem::new(pts, &sets).expect("construction is nested by design")
}

/// A random Omiljanowski instance: metric base plus a random marked set.
pub fn omil_space(rng: &mut ChaCha8Rng, n: usize) -> OmilSpace {
    let base = metric_space(rng, n, 1);
    let marked = base
        .points()
        .iter()
        .filter(|_| rng.random_range(0..2u8) == 0)
        .cloned()
        .collect();
    OmilSpace::new(base, marked).expect("metric base")
}

/// A random point of Γ over the given vertices, with grid parameter
/// denominator `den`.
pub fn gamma_point(rng: &mut ChaCha8Rng, vertices: &[String], den: i64) -> GammaPoint {
    let n = vertices.len();
    if n >= 2 && rng.random_range(0..4u8) > 0 {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        GammaPoint::interior(
            vertices[i].clone(),
            vertices[j].clone(),
            q(rng.random_range(1..den), den),
        )
        .expect("valid parameters")
    } else {
        GammaPoint::Vertex(vertices[rng.random_range(0..n)].clone())
    }
}

/// A random cobweb member: a vertex, or an interior point drawn inside
/// the kept part of a random edge.
pub fn cobweb_point(rng: &mut ChaCha8Rng, cw: &CobwebSpace, den: i64) -> GammaPoint {
    let pts = cw.base().points();
    let n = pts.len();
    if n >= 2 && rng.random_range(0..4u8) > 0 {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        // largest grid numerator at or before the cut point
        let kept = Q::one() - cw.d1(j, i);
        let max_num = (kept * q(den, 1)).floor().to_integer().to_i64().unwrap();
        let max_num = max_num.min(den - 1);
        if max_num >= 1 {
            let t = q(rng.random_range(1..=max_num), den);
            return GammaPoint::interior(pts[i].clone(), pts[j].clone(), t)
                .expect("valid parameters");
        }
    }
    GammaPoint::Vertex(pts[rng.random_range(0..n)].clone())
}

/// A random valid level-`level` point over the tower's base.
pub fn level_point(rng: &mut ChaCha8Rng, tower: &Tower, level: usize, den: i64) -> LevelPoint {
    if level == 0 {
        let pts = tower.base().points();
        return LevelPoint::base(pts[rng.random_range(0..pts.len())].clone());
    }
    // bias toward interior points but fall back to vertices when a valid
    // partner or parameter fails to materialize
    if rng.random_range(0..3u8) > 0 {
        for _ in 0..4 {
            let a = level_point(rng, tower, level - 1, den);
            let b = level_point(rng, tower, level - 1, den);
            if a == b {
                continue;
            }
            let d = tower.rho_n(&b, &a).expect("levels match");
            let cut = Q::one() - d.min(q(1, 2));
            let max_num = (cut * q(den, 1)).floor().to_integer().to_i64().unwrap();
            let max_num = max_num.min(den - 1);
            if max_num >= 1 {
                let t = q(rng.random_range(1..=max_num), den);
                return LevelPoint::interior(a, b, t);
            }
        }
    }
    LevelPoint::vertex(level_point(rng, tower, level - 1, den))
}

/// A random canonical-tail thread with prefix length at most `max_depth`.
pub fn thread(rng: &mut ChaCha8Rng, tower: &Tower, max_depth: usize, den: i64) -> Thread {
    let depth = rng.random_range(1..=max_depth.max(1));
    let pts = tower.base().points();
    let mut current = LevelPoint::base(pts[rng.random_range(0..pts.len())].clone());
    let mut prefix = Vec::with_capacity(depth);
    for level in 1..=depth {
        // extend over the current coordinate: embed as a vertex, or grow
        // an interior point whose compression is the current coordinate
        let grow_interior = rng.random_range(0..3u8) > 0;
        let next = if grow_interior {
            let mut made = None;
            for _ in 0..4 {
                let partner = level_point(rng, tower, level - 1, den);
                if partner == current {
                    continue;
                }
                let d = tower.rho_n(&partner, &current).expect("levels match");
                let cut = Q::one() - d.min(q(1, 2));
                let max_num = (cut * q(den, 1)).floor().to_integer().to_i64().unwrap();
                let max_num = max_num.min(den - 1);
                if max_num >= 1 {
                    let t = q(rng.random_range(1..=max_num), den);
                    made = Some(LevelPoint::interior(current.clone(), partner, t));
                    break;
                }
            }
            made.unwrap_or_else(|| LevelPoint::vertex(current.clone()))
        } else {
            LevelPoint::vertex(current.clone())
        };
        prefix.push(next.clone());
        current = next;
    }
    tower
        .thread(prefix)
        .expect("generated prefix is compatible")
}
