//! The individual property checks behind the verification suites.
//!
//! Each function sweeps seeded cases of one identity and returns a
//! [`PropertyReport`]. Counts are explicit parameters so callers (the CLI
//! suites, the acceptance tests) can pin their own sweep sizes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cobweb::CobwebSpace;
use crate::distance_core::DistanceSpace;
use crate::finite_topology::{enumerate_topologies, FiniteTopology, SpaceMap};
use crate::gallery::{
    cantor_cube_distance, extremal_ball_image, extremal_check_local_extremum, extremal_d,
    nonfu_truncation, ExtremalPoint, Extremum, NeighborhoodSystem, OmilSpace,
};
use crate::gen;
use crate::graph_metric::{hedgehog_distance, GammaPoint, GammaSpace, HedgehogPoint};
use crate::rational::{format_rational, q, qi, Q};
use crate::tower::{LevelPoint, Thread, Tower};
use crate::verify::{Prop, PropertyReport};

fn prop_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    gen::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
}

fn fmt_gamma(p: &GammaPoint) -> String {
    serde_json::to_string(p).unwrap_or_default()
}

// ---------------------------------------------------------------------
// distance-core
// ---------------------------------------------------------------------

/// Balls contain their center and grow monotonically with the radius.
pub fn ball_basics(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("ball-basics", "distance-space");
    let mut rng = prop_rng(seed, 101);
    for _ in 0..cases {
        let n = rng.random_range(1..=max_points.max(1));
        let space = gen::distance_space(&mut rng, n);
        let x = space.points()[rng.random_range(0..n)].clone();
        let r1 = q(rng.random_range(1..=30), 20);
        let r2 = &r1 + q(rng.random_range(0..=20), 20);
        let b1 = space.ball(&x, &r1).unwrap();
        let b2 = space.ball(&x, &r2).unwrap();
        prop.case(b1.contains(&x), || format!("{x} missing from its own ball"));
        prop.case(b1.is_subset(&b2), || {
            format!(
                "ball at {x} not monotone between {} and {}",
                format_rational(&r1),
                format_rational(&r2)
            )
        });
    }
    prop.finish()
}

/// Generated topologies contain the empty set and the whole space and are
/// closed under pairwise union and intersection.
pub fn generated_topology_closure(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("generated-topology-closure", "distance-space");
    let mut rng = prop_rng(seed, 102);
    for _ in 0..cases {
        let n = rng.random_range(1..=max_points.max(1));
        let space = gen::distance_space(&mut rng, n);
        let top = space.generated_topology().unwrap();
        let revalidated =
            FiniteTopology::from_masks(top.points().to_vec(), top.opens_masks().to_vec());
        prop.case(revalidated.is_ok(), || {
            format!(
                "family not a topology for {}",
                serde_json::to_string(&space).unwrap()
            )
        });
    }
    prop.finish()
}

/// Metric tables are well-behaved; a zero-distance chain that breaks the
/// interior condition is detected.
pub fn well_behaved_predicate(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("well-behaved-predicate", "1stcountablewell");
    let mut rng = prop_rng(seed, 103);
    for _ in 0..cases {
        let n = rng.random_range(1..=max_points.max(1));
        let space = gen::metric_space(&mut rng, n.max(1), 1);
        prop.case(space.is_well_behaved().unwrap(), || {
            format!(
                "metric space reported ill-behaved: {}",
                serde_json::to_string(&space).unwrap()
            )
        });
    }
    // fixed witness: d(a,b)=0, d(b,c)=0, d(a,c)=1 (rest 1) is not well-behaved
    let witness = DistanceSpace::from_table(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![qi(0), qi(0), qi(1)],
            vec![qi(1), qi(0), qi(0)],
            vec![qi(1), qi(1), qi(0)],
        ],
    )
    .unwrap();
    prop.case(!witness.is_well_behaved().unwrap(), || {
        "zero-chain witness reported well-behaved".to_string()
    });
    prop.finish()
}

// ---------------------------------------------------------------------
// graph-metric
// ---------------------------------------------------------------------

/// Symmetry, identity of indiscernibles and the triangle inequality for
/// the graph metric, exactly, on random points over random vertex sets.
pub fn construction_metric_axioms(
    seed: u64,
    spaces: usize,
    pairs: usize,
    max_points: usize,
) -> PropertyReport {
    let mut prop = Prop::new("construction-metric-axioms", "construction");
    let mut rng = prop_rng(seed, 201);
    for _ in 0..spaces {
        let n = rng.random_range(2..=max_points.max(2));
        let vertices = gen::labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        let pts: Vec<GammaPoint> = (0..pairs + 2)
            .map(|_| gen::gamma_point(&mut rng, &vertices, 16))
            .collect();
        for w in pts.windows(3) {
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            let dab = g.distance(a, b).unwrap();
            let dba = g.distance(b, a).unwrap();
            let dac = g.distance(a, c).unwrap();
            let dbc = g.distance(b, c).unwrap();
            prop.case(dab == dba, || {
                format!("asymmetry at {} / {}", fmt_gamma(a), fmt_gamma(b))
            });
            prop.case((dab.is_zero()) == (a == b), || {
                format!("identity failure at {} / {}", fmt_gamma(a), fmt_gamma(b))
            });
            prop.case(dac <= &dab + &dbc, || {
                format!(
                    "triangle failure at {} / {} / {}",
                    fmt_gamma(a),
                    fmt_gamma(b),
                    fmt_gamma(c)
                )
            });
        }
    }
    prop.finish()
}

/// Points on a shared edge are at straight-segment distance `|t-s|`.
pub fn construction_edge_isometry(seed: u64, samples: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("construction-edge-isometry", "construction");
    let mut rng = prop_rng(seed, 202);
    for _ in 0..samples {
        let n = rng.random_range(2..=max_points.max(2));
        let vertices = gen::labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t = q(rng.random_range(1..32), 32);
        let s = q(rng.random_range(1..32), 32);
        let p = GammaPoint::interior(vertices[i].clone(), vertices[j].clone(), t.clone()).unwrap();
        let pq = GammaPoint::interior(vertices[i].clone(), vertices[j].clone(), s.clone()).unwrap();
        let d = g.distance(&p, &pq).unwrap();
        prop.case(d == (&t - &s).abs(), || {
            format!(
                "edge distance {} differs from |t-s| for t={}, s={}",
                format_rational(&d),
                format_rational(&t),
                format_rational(&s)
            )
        });
    }
    prop.finish()
}

/// Points on disjoint edges are strictly more than one apart.
pub fn construction_disjoint_edges(seed: u64, samples: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("construction-disjoint-edges", "construction");
    let mut rng = prop_rng(seed, 203);
    let one = Q::one();
    for _ in 0..samples {
        let n = rng.random_range(4..=max_points.max(4));
        let vertices = gen::labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        let mut idx: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        idx.shuffle(&mut rng);
        let p = GammaPoint::interior(
            vertices[idx[0]].clone(),
            vertices[idx[1]].clone(),
            q(rng.random_range(1..16), 16),
        )
        .unwrap();
        let pq = GammaPoint::interior(
            vertices[idx[2]].clone(),
            vertices[idx[3]].clone(),
            q(rng.random_range(1..16), 16),
        )
        .unwrap();
        let d = g.distance(&p, &pq).unwrap();
        prop.case(d > one, || {
            format!(
                "disjoint-edge distance {} not above one for {} / {}",
                format_rational(&d),
                fmt_gamma(&p),
                fmt_gamma(&pq)
            )
        });
    }
    prop.finish()
}

/// The open 1/2-ball at an edge midpoint contains only points of that
/// edge, checked over the full grid of a small graph.
pub fn construction_open_edge_midball(grid_k: u32, n_vertices: usize) -> PropertyReport {
    let mut prop = Prop::new("construction-open-edge-midball", "construction");
    let vertices = gen::labels(n_vertices);
    let g = GammaSpace::new(vertices.clone()).unwrap();
    let half = q(1, 2);
    let center =
        GammaPoint::interior(vertices[0].clone(), vertices[1].clone(), half.clone()).unwrap();
    let mut grid: Vec<GammaPoint> = vertices
        .iter()
        .map(|v| GammaPoint::Vertex(v.clone()))
        .collect();
    for i in 0..n_vertices {
        for j in 0..n_vertices {
            if i == j {
                continue;
            }
            for step in 1..grid_k {
                grid.push(
                    GammaPoint::interior(
                        vertices[i].clone(),
                        vertices[j].clone(),
                        q(step as i64, grid_k as i64),
                    )
                    .unwrap(),
                );
            }
        }
    }
    for z in &grid {
        let inside = g.distance(&center, z).unwrap() < half;
        let on_edge = matches!(
            z,
            GammaPoint::Interior { from, to, .. } if *from == vertices[0] && *to == vertices[1]
        );
        prop.case(!inside || on_edge, || {
            format!("midball leaked to {}", fmt_gamma(z))
        });
    }
    prop.finish()
}

/// The closed form agrees with the discretized shortest-path oracle on
/// grid points: within `2/k` always, and exactly here because geodesics
/// pass through grid nodes.
pub fn construction_oracle_agreement(
    seed: u64,
    pairs: usize,
    max_points: usize,
    k: u32,
) -> PropertyReport {
    let mut prop = Prop::new("construction-oracle-agreement", "construction");
    let mut rng = prop_rng(seed, 204);
    let tolerance = q(2, k as i64);
    for _ in 0..pairs {
        let n = rng.random_range(2..=max_points.max(2));
        let vertices = gen::labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        let p = gen::gamma_point(&mut rng, &vertices, k as i64);
        let pq = gen::gamma_point(&mut rng, &vertices, k as i64);
        let closed = g.distance(&p, &pq).unwrap();
        let oracle = g.oracle_distance(&p, &pq, k).unwrap();
        prop.case((&closed - &oracle).abs() <= tolerance, || {
            format!(
                "oracle {} vs closed form {} at {} / {}",
                format_rational(&oracle),
                format_rational(&closed),
                fmt_gamma(&p),
                fmt_gamma(&pq)
            )
        });
        prop.case(closed == oracle, || {
            format!(
                "grid pair not exact: oracle {} vs {}",
                format_rational(&oracle),
                format_rational(&closed)
            )
        });
    }
    prop.finish()
}

/// Hedgehog distances satisfy the metric axioms exactly.
pub fn hedgehog_metric_axioms(seed: u64, samples: usize) -> PropertyReport {
    let mut prop = Prop::new("hedgehog-metric-axioms", "hedgehog");
    let mut rng = prop_rng(seed, 205);
    let eps = q(1, 2);
    let point = |rng: &mut ChaCha8Rng| -> HedgehogPoint {
        if rng.random_range(0..6u8) == 0 {
            HedgehogPoint::Center
        } else {
            HedgehogPoint::Spike {
                spike: format!("s{}", rng.random_range(0..5)),
                t: q(rng.random_range(1..=16), 32),
            }
        }
    };
    for _ in 0..samples {
        let (a, b, c) = (point(&mut rng), point(&mut rng), point(&mut rng));
        let dab = hedgehog_distance(&a, &b, &eps).unwrap();
        let dba = hedgehog_distance(&b, &a, &eps).unwrap();
        let dac = hedgehog_distance(&a, &c, &eps).unwrap();
        let dbc = hedgehog_distance(&b, &c, &eps).unwrap();
        prop.case(dab == dba, || "hedgehog asymmetry".to_string());
        prop.case(dab.is_zero() == (a == b), || {
            "hedgehog identity failure".to_string()
        });
        prop.case(dac <= &dab + &dbc, || {
            "hedgehog triangle failure".to_string()
        });
    }
    prop.finish()
}

/// The closed 1/2-ball at a vertex is isometric to a hedgehog with
/// `2(|X|-1)` spikes of length 1/2 under the explicit correspondence:
/// `(x,u,t)` to spike `out:u` at height `t`, `(u,x,1-s)` to spike `in:u`
/// at height `s`.
pub fn hedgehog_vertex_halfball(
    seed: u64,
    spaces: usize,
    pairs: usize,
    max_points: usize,
) -> PropertyReport {
    let mut prop = Prop::new("hedgehog-vertex-halfball", "hedgehog");
    let mut rng = prop_rng(seed, 206);
    let eps = q(1, 2);
    for _ in 0..spaces {
        let n = rng.random_range(2..=max_points.max(2));
        let vertices = gen::labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        let x = vertices[rng.random_range(0..n)].clone();
        // sample points in the closed half-ball together with their spike images
        let sample = |rng: &mut ChaCha8Rng| -> (GammaPoint, HedgehogPoint) {
            if rng.random_range(0..8u8) == 0 {
                return (GammaPoint::Vertex(x.clone()), HedgehogPoint::Center);
            }
            let mut u = vertices[rng.random_range(0..n)].clone();
            while u == x {
                u = vertices[rng.random_range(0..n)].clone();
            }
            let h = q(rng.random_range(1..=16), 32); // height in (0, 1/2]
            if rng.random_range(0..2u8) == 0 {
                (
                    GammaPoint::interior(x.clone(), u.clone(), h.clone()).unwrap(),
                    HedgehogPoint::Spike {
                        spike: format!("out:{u}"),
                        t: h,
                    },
                )
            } else {
                (
                    GammaPoint::interior(u.clone(), x.clone(), Q::one() - &h).unwrap(),
                    HedgehogPoint::Spike {
                        spike: format!("in:{u}"),
                        t: h,
                    },
                )
            }
        };
        for _ in 0..pairs {
            let (gp, hp) = sample(&mut rng);
            let (gq, hq) = sample(&mut rng);
            let dg = g.distance(&gp, &gq).unwrap();
            let dh = hedgehog_distance(&hp, &hq, &eps).unwrap();
            prop.case(dg == dh, || {
                format!(
                    "halfball correspondence broke at {} / {}: {} vs {}",
                    fmt_gamma(&gp),
                    fmt_gamma(&gq),
                    format_rational(&dg),
                    format_rational(&dh)
                )
            });
        }
    }
    prop.finish()
}

// ---------------------------------------------------------------------
// cobweb
// ---------------------------------------------------------------------

fn random_cobweb(rng: &mut ChaCha8Rng, max_points: usize) -> CobwebSpace {
    let n = rng.random_range(2..=max_points.max(2));
    CobwebSpace::new(gen::distance_space(rng, n)).unwrap()
}

/// Membership keeps exactly the initial sub-arc up to the cut point.
pub fn cobweb_membership_cut(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("cobweb-membership-cut", "cobweb-definition");
    let mut rng = prop_rng(seed, 301);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let n = cw.base().len();
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (x, y) = (cw.base().points()[i].clone(), cw.base().points()[j].clone());
        let cut = Q::one() - cw.d1(j, i);
        if cut > Q::zero() && cut < Q::one() {
            let at = GammaPoint::interior(x.clone(), y.clone(), cut.clone()).unwrap();
            prop.case(cw.contains(&at).unwrap(), || {
                format!("cut point itself rejected on [{x},{y}]")
            });
        }
        let above = &cut + q(1, 1000);
        if above < Q::one() {
            let past = GammaPoint::interior(x.clone(), y.clone(), above).unwrap();
            prop.case(!cw.contains(&past).unwrap(), || {
                format!("point past the cut accepted on [{x},{y}]")
            });
        }
        let below = &cut - q(1, 1000);
        if below > Q::zero() {
            let inside = GammaPoint::interior(x.clone(), y.clone(), below).unwrap();
            prop.case(cw.contains(&inside).unwrap(), || {
                format!("kept point rejected on [{x},{y}]")
            });
        }
    }
    prop.finish()
}

/// Every base vertex belongs to the cobweb.
pub fn summary1_vertices(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("summary-1-vertices", "summary-1");
    let mut rng = prop_rng(seed, 302);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        for v in cw.base().points() {
            prop.case(cw.contains(&GammaPoint::Vertex(v.clone())).unwrap(), || {
                format!("vertex {v} missing from its cobweb")
            });
        }
    }
    prop.finish()
}

/// Compression fixes vertices and sends interior points to the edge tail.
pub fn summary2_compress_identity(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("summary-2-compress-identity", "summary-2");
    let mut rng = prop_rng(seed, 303);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let p = gen::cobweb_point(&mut rng, &cw, 16);
        let img = cw.compress(&p).unwrap();
        let expected = match &p {
            GammaPoint::Vertex(v) => v.clone(),
            GammaPoint::Interior { from, .. } => from.clone(),
        };
        prop.case(img == expected, || {
            format!("compress({}) = {img}", fmt_gamma(&p))
        });
    }
    prop.finish()
}

/// Fibers are stars at their vertex: every arc starts there at zero.
pub fn summary3_fiber_star(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("summary-3-fiber-star", "summary-3");
    let mut rng = prop_rng(seed, 304);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let x = cw.base().points()[rng.random_range(0..cw.base().len())].clone();
        let fiber = cw.fiber(&x).unwrap();
        prop.case(fiber.is_star_at(&x), || {
            format!("fiber at {x} is not a star")
        });
        prop.case(fiber.vertices == BTreeSet::from([x.clone()]), || {
            format!("fiber at {x} has stray vertices")
        });
        prop.case(fiber.arcs.len() == cw.base().len() - 1, || {
            format!("fiber at {x} has {} arcs", fiber.arcs.len())
        });
        // fiber members compress to x; sampled cobweb points compressing
        // to x lie in the fiber
        for p in fiber.sample_points(8) {
            prop.case(cw.compress(&p).unwrap() == x, || {
                format!("fiber point {} compresses elsewhere", fmt_gamma(&p))
            });
        }
        let p = gen::cobweb_point(&mut rng, &cw, 8);
        let in_fiber = fiber.contains_gamma(&p);
        let compresses_to_x = cw.compress(&p).unwrap() == x;
        prop.case(in_fiber == compresses_to_x, || {
            format!("fiber membership mismatch at {}", fmt_gamma(&p))
        });
    }
    prop.finish()
}

/// Inside the certified radius, compression is constant.
pub fn summary4_local_constancy(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("summary-4-local-constancy", "summary-4");
    let mut rng = prop_rng(seed, 305);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let p = gen::cobweb_point(&mut rng, &cw, 16);
        if p.is_vertex() {
            continue;
        }
        let delta = cw.local_constancy_radius(&p).unwrap();
        let here = cw.compress(&p).unwrap();
        for _ in 0..8 {
            let z = gen::cobweb_point(&mut rng, &cw, 16);
            if cw.distance(&p, &z).unwrap() < delta {
                prop.case(cw.compress(&z).unwrap() == here, || {
                    format!(
                        "compression not constant within {} of {}",
                        format_rational(&delta),
                        fmt_gamma(&p)
                    )
                });
            }
        }
    }
    prop.finish()
}

/// The ball-image identity: compressing the cobweb vertex ball gives
/// exactly the base ball, for every vertex and every `r = i/20`.
pub fn summary6_ball_image(seed: u64, bases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("summary-6-ball-image", "summary-6");
    let mut rng = prop_rng(seed, 306);
    for _ in 0..bases {
        let cw = random_cobweb(&mut rng, max_points);
        for x in cw.base().points() {
            for i in 1..=9i64 {
                let r = q(i, 20);
                let img = cw.ball_image(x, &r).unwrap();
                let ball = cw.base().ball(x, &r).unwrap();
                prop.case(img == ball, || {
                    format!(
                        "ball image mismatch at {x}, r={}: {:?} vs {:?}",
                        format_rational(&r),
                        img,
                        ball
                    )
                });
            }
        }
    }
    prop.finish()
}

/// The open-saturation identity behind hereditary quotienthood:
/// compressing the vertex ball united with its punctured fiber gives the
/// base ball.
pub fn summary2_hq_identity(seed: u64, bases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("summary2-hq-identity", "summary2");
    let mut rng = prop_rng(seed, 307);
    for _ in 0..bases {
        let cw = random_cobweb(&mut rng, max_points);
        for x in cw.base().points() {
            for i in 1..=9i64 {
                let r = q(i, 20);
                let ball = cw.cob_ball(&GammaPoint::Vertex(x.clone()), &r).unwrap();
                let punctured = cw.fiber(x).unwrap().without_vertex(x);
                let united = ball.union(&punctured);
                let img = united.compress_image();
                let expected = cw.base().ball(x, &r).unwrap();
                prop.case(img == expected, || {
                    format!("saturated image mismatch at {x}, r={}", format_rational(&r))
                });
            }
        }
    }
    prop.finish()
}

/// Symbolic cobweb balls agree with direct distance evaluation in both
/// directions on a parameter grid.
pub fn cob_ball_exactness(
    seed: u64,
    cases: usize,
    max_points: usize,
    grid_k: u32,
) -> PropertyReport {
    let mut prop = Prop::new("cob-ball-exactness", "cobweb-definition");
    let mut rng = prop_rng(seed, 308);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let center = gen::cobweb_point(&mut rng, &cw, grid_k as i64);
        let r = match &center {
            GammaPoint::Vertex(_) => q(rng.random_range(1..=10), 20),
            GammaPoint::Interior { t, .. } => {
                let cap = t.clone().min(Q::one() - t);
                if cap <= Q::zero() {
                    continue;
                }
                let num = (cap * qi(20)).floor().to_integer();
                let num: i64 = num.try_into().unwrap();
                if num < 1 {
                    continue;
                }
                q(rng.random_range(1..=num), 20)
            }
        };
        let ball = cw.cob_ball(&center, &r).unwrap();
        // every symbolic member is a cobweb point strictly inside the ball
        for p in ball.sample_points(grid_k) {
            prop.case(cw.contains(&p).unwrap(), || {
                format!("ball emitted non-member {}", fmt_gamma(&p))
            });
            prop.case(cw.distance(&center, &p).unwrap() < r, || {
                format!("ball emitted far point {}", fmt_gamma(&p))
            });
        }
        // every near grid point of the cobweb is a symbolic member
        let full = full_cobweb_grid(&cw, grid_k);
        for p in full {
            let near = cw.distance(&center, &p).unwrap() < r;
            prop.case(near == ball.contains_gamma(&p), || {
                format!(
                    "symbolic ball disagrees with distances at {}",
                    fmt_gamma(&p)
                )
            });
        }
    }
    prop.finish()
}

/// All grid points of the cobweb: vertices plus kept multiples of `1/k`.
fn full_cobweb_grid(cw: &CobwebSpace, k: u32) -> Vec<GammaPoint> {
    let pts = cw.base().points();
    let mut out: Vec<GammaPoint> = pts.iter().map(|v| GammaPoint::Vertex(v.clone())).collect();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            for step in 1..k {
                let t = q(step as i64, k as i64);
                let p = GammaPoint::interior(x.clone(), y.clone(), t).unwrap();
                if cw.contains(&p).unwrap() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Distinct base vertices stay at graph distance exactly one inside the
/// cobweb.
pub fn sepcomp_vertex_discreteness(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("sepcomp-vertex-discreteness", "sepcomp");
    let mut rng = prop_rng(seed, 309);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let n = cw.base().len();
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let d = cw
            .distance(
                &GammaPoint::Vertex(cw.base().points()[i].clone()),
                &GammaPoint::Vertex(cw.base().points()[j].clone()),
            )
            .unwrap();
        prop.case(d == Q::one(), || {
            format!("vertex pair at distance {}", format_rational(&d))
        });
    }
    prop.finish()
}

/// Interior points closer than the certified radius share their
/// compression value: the counting mechanic for image cardinality.
pub fn sepcomp_compress_classes(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("sepcomp-compress-classes", "sepcomp");
    let mut rng = prop_rng(seed, 310);
    for _ in 0..cases {
        let cw = random_cobweb(&mut rng, max_points);
        let sample: Vec<GammaPoint> = (0..10)
            .map(|_| gen::cobweb_point(&mut rng, &cw, 16))
            .filter(|p| !p.is_vertex())
            .collect();
        for p in &sample {
            let delta = cw.local_constancy_radius(p).unwrap();
            for z in &sample {
                if cw.distance(p, z).unwrap() < delta {
                    prop.case(cw.compress(p).unwrap() == cw.compress(z).unwrap(), || {
                        format!("class split at {} / {}", fmt_gamma(p), fmt_gamma(z))
                    });
                }
            }
        }
    }
    prop.finish()
}

/// The fiberwise quotient distance equals the base distance for symmetric
/// bases and refuses asymmetric ones.
pub fn abundance_quotient_distance(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("abundance-quotient-distance", "abundance");
    let mut rng = prop_rng(seed, 311);
    for _ in 0..cases {
        let n = rng.random_range(2..=max_points.max(2));
        let base = gen::metric_space(&mut rng, n, 1);
        let cw = CobwebSpace::new(base).unwrap();
        let a = cw.base().points()[rng.random_range(0..n)].clone();
        let b = cw.base().points()[rng.random_range(0..n)].clone();
        let d = cw.quotient_distance(&a, &b).unwrap();
        prop.case(
            d == cw.base().distance(&a, &b).unwrap() && d == cw.base().distance(&b, &a).unwrap(),
            || format!("quotient distance mismatch at {a},{b}"),
        );
    }
    // asymmetric guard
    let base = DistanceSpace::from_table(
        vec!["a".into(), "b".into()],
        vec![vec![Q::zero(), q(1, 3)], vec![q(1, 2), Q::zero()]],
    )
    .unwrap();
    let cw = CobwebSpace::new(base).unwrap();
    prop.case(cw.quotient_distance("a", "b").is_err(), || {
        "asymmetric base accepted".to_string()
    });
    prop.finish()
}

/// Fiber distances follow the hedgehog formulas on separating bases whose
/// distances are at least 1/4 (kept spikes then sum within the detour
/// bound, so the correspondence is exact).
pub fn fiber_hedgehog_grid(
    seed: u64,
    cases: usize,
    max_points: usize,
    grid_k: u32,
) -> PropertyReport {
    let mut prop = Prop::new("fiber-hedgehog-grid", "fiber-hedgehog");
    let mut rng = prop_rng(seed, 312);
    for _ in 0..cases {
        let n = rng.random_range(2..=max_points.max(2));
        // min numerator 5 over denominator 20: distances at least 1/4
        let base = gen::separating_space(&mut rng, n, 5);
        let cw = CobwebSpace::new(base).unwrap();
        for x in cw.base().points() {
            prop.case(cw.fiber_hedgehog_check(x, grid_k).unwrap(), || {
                format!("fiber at {x} broke the hedgehog correspondence")
            });
        }
    }
    prop.finish()
}

// ---------------------------------------------------------------------
// appendix
// ---------------------------------------------------------------------

/// Labeled topology counts for 0..=4 points: 1, 1, 4, 29, 355.
pub fn appendix_enumeration_counts(include_four: bool) -> PropertyReport {
    let mut prop = Prop::new("appendix-enumeration-counts", "defs");
    let expected = [1usize, 1, 4, 29, 355];
    let top = if include_four { 4 } else { 3 };
    for n in 0..=top {
        let count = enumerate_topologies(n).unwrap().count();
        prop.case(count == expected[n], || {
            format!("count at {n} points: {count}, expected {}", expected[n])
        });
    }
    prop.finish()
}

struct MapFacts {
    map: SpaceMap,
    monotone: bool,
    quotient: bool,
    hereditarily_quotient: bool,
}

impl MapFacts {
    fn gather(map: SpaceMap) -> Self {
        let surjective = map.is_surjective();
        let monotone = map.is_monotone();
        let quotient = surjective && map.is_quotient().unwrap();
        let hereditarily_quotient = surjective && map.is_hereditarily_quotient().unwrap();
        Self {
            map,
            monotone,
            quotient,
            hereditarily_quotient,
        }
    }
}

fn all_assignments(nd: usize, nc: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..nd {
        let mut next = Vec::with_capacity(out.len() * nc);
        for partial in &out {
            for y in 0..nc {
                let mut v = partial.clone();
                v.push(y);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn compose(f: &SpaceMap, g: &SpaceMap) -> SpaceMap {
    let assignment = f.assignment().iter().map(|y| g.assignment()[*y]).collect();
    SpaceMap::from_indices(f.domain().clone(), g.codomain().clone(), assignment)
        .expect("composition is total")
}

/// The five appendix map lemmas, exhaustively over all topologies and
/// maps on at most three points, randomized over four-point spaces, plus
/// the witness search for a continuous monotone quotient surjection that
/// is not hereditarily quotient.
pub fn appendix_lemma_suite(seed: u64, rand4_maps: usize) -> Vec<PropertyReport> {
    let mut eng121 = Prop::new("eng121-restriction", "eng121");
    let mut zconn = Prop::new("zconnectedifxconnected-lemma", "zconnectedifxconnected");
    let mut supermono = Prop::new("supermonotone-lemma", "supermonotone");
    let mut stillmono = Prop::new("stillmonotone-lemma", "stillmonotone");
    let mut herquo = Prop::new("herquocompo-lemma", "herquocompo");

    let topologies: Vec<Vec<FiniteTopology>> = (0..=3)
        .map(|n| enumerate_topologies(n).unwrap().collect())
        .collect();

    // exhaustive universe of maps on <= 3 points, grouped by the codomain
    // (index into a flat list of topologies) for composition sweeps
    let mut flat: Vec<&FiniteTopology> = Vec::new();
    for n in 1..=3 {
        flat.extend(topologies[n].iter());
    }
    let mut into: Vec<Vec<MapFacts>> = (0..flat.len()).map(|_| Vec::new()).collect();
    let mut from: Vec<Vec<MapFacts>> = (0..flat.len()).map(|_| Vec::new()).collect();

    for (ci, cod) in flat.iter().enumerate() {
        for dom in flat.iter() {
            for assignment in all_assignments(dom.len(), cod.len()) {
                let map =
                    SpaceMap::from_indices((*dom).clone(), (*cod).clone(), assignment).unwrap();
                let facts = MapFacts::gather(map);
                check_single_map_lemmas(&facts, &mut eng121, &mut zconn, &mut supermono);
                // only hereditarily quotient maps can head a composition
                // in either composition lemma
                if facts.hereditarily_quotient {
                    into[ci].push(facts);
                }
            }
        }
        for cod2 in flat.iter() {
            for assignment in all_assignments(cod.len(), cod2.len()) {
                let map =
                    SpaceMap::from_indices((*cod).clone(), (*cod2).clone(), assignment).unwrap();
                let facts = MapFacts::gather(map);
                if facts.monotone || facts.hereditarily_quotient {
                    from[ci].push(facts);
                }
            }
        }
    }

    // composition lemmas over the shared middle space
    for ci in 0..flat.len() {
        for f in &into[ci] {
            for g in &from[ci] {
                check_composition_lemmas(f, g, &mut stillmono, &mut herquo);
            }
        }
    }

    // randomized four-point sweeps
    let mut rng = prop_rng(seed, 401);
    for _ in 0..rand4_maps {
        let nx = rng.random_range(2..=4usize);
        let ny = rng.random_range(2..=nx);
        let nz = rng.random_range(1..=ny);
        let tx = gen::topology(&mut rng, nx);
        let ty = gen::topology(&mut rng, ny);
        let tz = gen::topology(&mut rng, nz);
        let Some(f) = gen::space_map(&mut rng, &tx, &ty, true) else {
            continue;
        };
        let Some(g) = gen::space_map(&mut rng, &ty, &tz, true) else {
            continue;
        };
        let f = MapFacts::gather(f);
        let g = MapFacts::gather(g);
        check_single_map_lemmas(&f, &mut eng121, &mut zconn, &mut supermono);
        check_single_map_lemmas(&g, &mut eng121, &mut zconn, &mut supermono);
        check_composition_lemmas(&f, &g, &mut stillmono, &mut herquo);
    }

    let witness = witness_search();

    vec![
        eng121.finish(),
        zconn.finish(),
        supermono.finish(),
        stillmono.finish(),
        herquo.finish(),
        witness,
    ]
}

fn describe_map(m: &SpaceMap) -> String {
    serde_json::to_string(m).unwrap_or_default()
}

fn check_single_map_lemmas(
    facts: &MapFacts,
    eng121: &mut Prop,
    zconn: &mut Prop,
    supermono: &mut Prop,
) {
    if facts.hereditarily_quotient {
        eng121.case(facts.map.restriction_quotient_all().unwrap(), || {
            format!("restriction not quotient for {}", describe_map(&facts.map))
        });
    }
    if facts.monotone && facts.quotient {
        let cod_connected = facts
            .map
            .codomain()
            .is_connected_mask(facts.map.codomain().full_mask());
        if cod_connected {
            zconn.case(
                facts
                    .map
                    .domain()
                    .is_connected_mask(facts.map.domain().full_mask()),
                || format!("domain disconnected for {}", describe_map(&facts.map)),
            );
        }
    }
    if facts.monotone && facts.hereditarily_quotient {
        let full = facts.map.codomain().full_mask();
        let mut e = full;
        loop {
            if facts.map.codomain().is_connected_mask(e) {
                supermono.case(
                    facts
                        .map
                        .domain()
                        .is_connected_mask(facts.map.preimage_mask(e)),
                    || {
                        format!(
                            "disconnected preimage of a connected subset for {}",
                            describe_map(&facts.map)
                        )
                    },
                );
            }
            if e == 0 {
                break;
            }
            e = (e - 1) & full;
        }
    }
}

fn check_composition_lemmas(f: &MapFacts, g: &MapFacts, stillmono: &mut Prop, herquo: &mut Prop) {
    if f.monotone && f.hereditarily_quotient && g.monotone {
        let comp = compose(&f.map, &g.map);
        stillmono.case(comp.is_monotone(), || {
            format!(
                "composition not monotone for {} then {}",
                describe_map(&f.map),
                describe_map(&g.map)
            )
        });
    }
    if f.hereditarily_quotient && g.hereditarily_quotient {
        let comp = compose(&f.map, &g.map);
        herquo.case(comp.is_hereditarily_quotient().unwrap(), || {
            format!(
                "composition not hereditarily quotient for {} then {}",
                describe_map(&f.map),
                describe_map(&g.map)
            )
        });
    }
}

/// Scans small spaces for a continuous monotone quotient surjection that
/// is not hereditarily quotient; records how many candidates were
/// examined and fails only if no witness exists in the search space.
fn witness_search() -> PropertyReport {
    let mut prop = Prop::new("defs-witness-search", "defs");
    let mut examined: u64 = 0;
    let mut found: Option<String> = None;
    'search: for nx in 2..=4usize {
        let xs: Vec<FiniteTopology> = enumerate_topologies(nx).unwrap().collect();
        for ny in 2..=nx.min(3) {
            let ys: Vec<FiniteTopology> = enumerate_topologies(ny).unwrap().collect();
            for tx in &xs {
                for ty in &ys {
                    for assignment in all_assignments(nx, ny) {
                        let map =
                            SpaceMap::from_indices(tx.clone(), ty.clone(), assignment).unwrap();
                        examined += 1;
                        if !map.is_surjective() || !map.is_continuous() || !map.is_monotone() {
                            continue;
                        }
                        if !map.is_quotient().unwrap() {
                            continue;
                        }
                        if !map.is_hereditarily_quotient().unwrap() {
                            found = Some(describe_map(&map));
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    prop.cases = examined;
    prop.case(found.is_some(), || {
        "no continuous monotone quotient non-hereditarily-quotient surjection found".to_string()
    });
    prop.finish()
}

// ---------------------------------------------------------------------
// tower
// ---------------------------------------------------------------------

fn random_tower(rng: &mut ChaCha8Rng, max_points: usize) -> Tower {
    let n = rng.random_range(2..=max_points.max(2));
    Tower::new(gen::distance_space(rng, n))
}

/// Generated threads satisfy the compatibility equations; corrupted
/// prefixes are rejected.
pub fn tower_thread_compatibility(
    seed: u64,
    cases: usize,
    max_points: usize,
    depth: usize,
) -> PropertyReport {
    let mut prop = Prop::new("cobomega-thread-compatibility", "cobomega");
    let mut rng = prop_rng(seed, 501);
    for _ in 0..cases {
        let tw = random_tower(&mut rng, max_points);
        let th = gen::thread(&mut rng, &tw, depth, 16);
        prop.case(tw.validate_thread(th.prefix()), || {
            "generated thread failed validation".to_string()
        });
        // corrupt: re-point an entry at a wrong predecessor
        if th.prefix_len() >= 2 {
            let mut prefix = th.prefix().to_vec();
            let k = prefix.len() - 1;
            prefix[k] = LevelPoint::vertex(prefix[k].clone());
            // wrong level now; must be rejected
            prop.case(!tw.validate_thread(&prefix), || {
                "level-shifted prefix accepted".to_string()
            });
        }
        let other = gen::thread(&mut rng, &tw, depth, 16);
        if other.prefix()[0] != th.prefix()[0] && th.prefix_len() >= 2 {
            let mut prefix = th.prefix().to_vec();
            prefix[0] = other.prefix()[0].clone();
            prop.case(!tw.validate_thread(&prefix), || {
                "incompatible prefix accepted".to_string()
            });
        }
    }
    prop.finish()
}

/// Level points validate; parameters beyond the cut point are rejected.
pub fn tower_membership_levels(
    seed: u64,
    cases: usize,
    max_points: usize,
    depth: usize,
) -> PropertyReport {
    let mut prop = Prop::new("cobomega-membership-levels", "cobomega");
    let mut rng = prop_rng(seed, 502);
    for _ in 0..cases {
        let tw = random_tower(&mut rng, max_points);
        let level = rng.random_range(1..=depth);
        let p = gen::level_point(&mut rng, &tw, level, 16);
        prop.case(tw.validate_point(&p).is_ok(), || {
            "generated level point failed validation".to_string()
        });
        prop.case(p.level() == level, || "level bookkeeping broke".to_string());
        if let LevelPoint::Interior { a, b, .. } = &p {
            let d = tw.rho_n(b, a).unwrap();
            let cut = Q::one() - d.min(q(1, 2));
            let beyond = &cut + q(1, 1000);
            if beyond < Q::one() {
                let bad = LevelPoint::interior((**a).clone(), (**b).clone(), beyond);
                prop.case(tw.validate_point(&bad).is_err(), || {
                    "parameter beyond the cut accepted".to_string()
                });
            }
        }
    }
    prop.finish()
}

/// Graph metrics at every level stay at or below two.
pub fn tower_rho_bound(seed: u64, cases: usize, max_points: usize, depth: usize) -> PropertyReport {
    let mut prop = Prop::new("complete-economical-rho-bound", "complete-economical");
    let mut rng = prop_rng(seed, 503);
    let two = qi(2);
    for _ in 0..cases {
        let tw = random_tower(&mut rng, max_points);
        let level = rng.random_range(1..=depth);
        let p = gen::level_point(&mut rng, &tw, level, 16);
        let pq = gen::level_point(&mut rng, &tw, level, 16);
        let d = tw.rho_n(&p, &pq).unwrap();
        prop.case(d <= two, || {
            format!("rho_{level} = {}", format_rational(&d))
        });
    }
    prop.finish()
}

/// The limit distance is an exact metric on thread samples.
pub fn tower_metric_axioms(
    seed: u64,
    batches: usize,
    batch_size: usize,
    max_points: usize,
    depth: usize,
) -> PropertyReport {
    let mut prop = Prop::new("complete-economical-metric-axioms", "complete-economical");
    let mut rng = prop_rng(seed, 504);
    for _ in 0..batches {
        let tw = random_tower(&mut rng, max_points);
        let threads: Vec<Thread> = (0..batch_size)
            .map(|_| gen::thread(&mut rng, &tw, depth, 16))
            .collect();
        let m = threads.len();
        let mut table = vec![vec![Q::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                table[i][j] = tw.rho_infty(&threads[i], &threads[j]).unwrap();
            }
        }
        for i in 0..m {
            for j in 0..m {
                prop.case(table[i][j] == table[j][i], || {
                    format!("limit metric asymmetry at pair ({i},{j})")
                });
                prop.case(table[i][j].is_zero() == (threads[i] == threads[j]), || {
                    format!("limit metric identity failure at pair ({i},{j})")
                });
                for k in 0..m {
                    prop.case(table[i][k] <= &table[i][j] + &table[j][k], || {
                        format!("limit metric triangle failure at ({i},{j},{k})")
                    });
                }
            }
        }
    }
    prop.finish()
}

/// Interval soundness: enclosures contain the exact value, never widen,
/// have width at most `2/(N+1)`, and collapse onto the exact value for
/// distinct threads.
pub fn tower_intervals(seed: u64, pairs: usize, max_points: usize, depth: usize) -> PropertyReport {
    let mut prop = Prop::new("complete-economical-intervals", "complete-economical");
    let mut rng = prop_rng(seed, 505);
    for _ in 0..pairs {
        let tw = random_tower(&mut rng, max_points);
        let a = gen::thread(&mut rng, &tw, depth, 16);
        let b = gen::thread(&mut rng, &tw, depth, 16);
        let exact = tw.rho_infty(&a, &b).unwrap();
        let mut prev = None;
        let mut collapsed = a == b;
        for n in 1..=depth + 12 {
            let iv = tw.rho_infty_interval(&a, &b, n).unwrap();
            prop.case(iv.contains(&exact), || {
                format!("interval at depth {n} misses the exact value")
            });
            prop.case(iv.width() <= q(2, (n + 1) as i64), || {
                format!("interval at depth {n} too wide")
            });
            if let Some(ref p) = prev {
                prop.case(iv.within(p), || format!("interval at depth {n} widened"));
            }
            if iv.lower == iv.upper {
                prop.case(iv.lower == exact, || {
                    format!("collapsed interval at depth {n} off the exact value")
                });
                collapsed = true;
            }
            prev = Some(iv);
        }
        prop.case(collapsed, || {
            "refinement never reached the exact value".to_string()
        });
    }
    prop.finish()
}

/// The limit compression fixes lifts, distinct lifts sit at distance one,
/// and the limit compression is the first-coordinate compression.
pub fn limitprojection_lift(seed: u64, cases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("limitprojection-lift", "limitprojection");
    let mut rng = prop_rng(seed, 506);
    for _ in 0..cases {
        let tw = random_tower(&mut rng, max_points);
        let pts = tw.base().points().to_vec();
        let x = pts[rng.random_range(0..pts.len())].clone();
        let lx = tw.lift(&x).unwrap();
        prop.case(tw.limit_compress(&lx).unwrap() == x, || {
            format!("lift of {x} compresses elsewhere")
        });
        let y = pts[rng.random_range(0..pts.len())].clone();
        let ly = tw.lift(&y).unwrap();
        if x != y {
            prop.case(tw.rho_infty(&lx, &ly).unwrap() == Q::one(), || {
                format!("lifts of {x},{y} not at distance one")
            });
        }
        let th = gen::thread(&mut rng, &tw, 4, 16);
        let via_chain = tw.limit_compress(&th).unwrap();
        let via_first = match tw.level_compress(&th.prefix()[0]).unwrap() {
            LevelPoint::Base(label) => label,
            _ => unreachable!(),
        };
        prop.case(via_chain == via_first, || {
            "limit compression disagrees with first-coordinate compression".to_string()
        });
    }
    prop.finish()
}

/// The distinct-distance count never exceeds the level-wise bound.
pub fn econo_counting_bound(
    seed: u64,
    samples: usize,
    sample_size: usize,
    max_points: usize,
    depth: usize,
) -> PropertyReport {
    let mut prop = Prop::new("econo-counting-bound", "econo");
    let mut rng = prop_rng(seed, 507);
    for _ in 0..samples {
        let tw = random_tower(&mut rng, max_points);
        let size = rng.random_range(1..=sample_size.max(1));
        let threads: Vec<Thread> = (0..size)
            .map(|_| gen::thread(&mut rng, &tw, depth, 16))
            .collect();
        let dc = tw.distinct_distance_count(&threads).unwrap();
        prop.case(dc.count <= dc.bound, || {
            format!("count {} above bound {}", dc.count, dc.bound)
        });
    }
    // lifts of k distinct points realize exactly {0, 1}
    let tw = Tower::new(gen::metric_space(&mut rng, max_points.max(3), 1));
    let lifts: Vec<Thread> = tw
        .base()
        .points()
        .iter()
        .map(|x| tw.lift(x).unwrap())
        .collect();
    let dc = tw.distinct_distance_count(&lifts).unwrap();
    prop.case(dc.count == 2, || {
        format!("lift sample realized {} values", dc.count)
    });
    prop.finish()
}

/// The gap-scan radius lies in `(0, r)` and is realized by no distance
/// from the center into the sample.
pub fn eco_p1_unrealized_radius(
    seed: u64,
    cases: usize,
    max_points: usize,
    depth: usize,
) -> PropertyReport {
    let mut prop = Prop::new("eco-p1-unrealized-radius", "eco-p1");
    let mut rng = prop_rng(seed, 508);
    for _ in 0..cases {
        let tw = random_tower(&mut rng, max_points);
        let center = gen::thread(&mut rng, &tw, depth, 16);
        let sample: Vec<Thread> = (0..rng.random_range(0..12usize))
            .map(|_| gen::thread(&mut rng, &tw, depth, 16))
            .collect();
        let r = q(rng.random_range(1..=40), 20);
        let eps = tw.find_unrealized_radius(&sample, &center, &r).unwrap();
        prop.case(eps > Q::zero() && eps < r, || {
            format!("radius {} outside (0, r)", format_rational(&eps))
        });
        let realized = sample
            .iter()
            .any(|t| tw.rho_infty(&center, t).unwrap() == eps);
        prop.case(!realized, || {
            format!("radius {} is a realized distance", format_rational(&eps))
        });
    }
    prop.finish()
}

// ---------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------

/// Ball images of the two-layer base match the closed-form intervals,
/// checked against raw distance evaluation on a fine grid and against the
/// cobweb ball image over finite restrictions.
pub fn extremal_ball_image_grid() -> PropertyReport {
    let mut prop = Prop::new("extremal-ball-image", "extremal");
    for ti in 1..=9i64 {
        let t = q(ti, 10);
        for layer in [0u8, 1u8] {
            let p = ExtremalPoint::new(t.clone(), layer).unwrap();
            for ei in 1..=9i64 {
                let eps = q(ei, 20);
                if eps >= t || eps >= Q::one() - &t {
                    continue;
                }
                let interval = extremal_ball_image(&p, &eps).unwrap();
                // oracle: direct membership via the distance cases
                for si in 1..=39i64 {
                    let s = q(si, 40);
                    let in_ball = [0u8, 1u8].iter().any(|l2| {
                        let q_pt = ExtremalPoint::new(s.clone(), *l2).unwrap();
                        extremal_d(&p, &q_pt) < eps
                    });
                    prop.case(in_ball == interval.contains(&s), || {
                        format!(
                            "interval mismatch at t={}, layer={layer}, eps={}, s={}",
                            format_rational(&t),
                            format_rational(&eps),
                            format_rational(&s)
                        )
                    });
                }
                // dual route: finite restriction through the cobweb machinery
                let coords: Vec<Q> = (1..=19).map(|i| q(i, 20)).collect();
                let img = finite_restriction_ball_image(&p, &eps, &coords);
                let expected: BTreeSet<Q> = coords
                    .iter()
                    .filter(|s| interval.contains(s))
                    .cloned()
                    .collect();
                prop.case(img == expected, || {
                    format!(
                        "cobweb restriction mismatch at t={}, layer={layer}, eps={}",
                        format_rational(&t),
                        format_rational(&eps)
                    )
                });
            }
        }
    }
    prop.finish()
}

/// Projection of the cobweb vertex-ball image of a finite restriction of
/// the two-layer base.
fn finite_restriction_ball_image(p: &ExtremalPoint, eps: &Q, coords: &[Q]) -> BTreeSet<Q> {
    let mut pts = Vec::new();
    let mut labels = Vec::new();
    for s in coords {
        for layer in [0u8, 1u8] {
            pts.push(ExtremalPoint::new(s.clone(), layer).unwrap());
            labels.push(format!("{}|{layer}", format_rational(s)));
        }
    }
    if !pts.contains(p) {
        pts.push(p.clone());
        labels.push(format!("{}|{}", format_rational(&p.t), p.layer));
    }
    let table: Vec<Vec<Q>> = pts
        .iter()
        .map(|a| pts.iter().map(|b| extremal_d(a, b)).collect())
        .collect();
    let space = DistanceSpace::from_table(labels.clone(), table).unwrap();
    let cw = CobwebSpace::new(space).unwrap();
    let center = format!("{}|{}", format_rational(&p.t), p.layer);
    let img = cw.ball_image(&center, eps).unwrap();
    img.iter()
        .map(|l| {
            let (coord, _) = l.rsplit_once('|').unwrap();
            crate::rational::parse_rational(coord).unwrap()
        })
        .collect()
}

/// Layer 0 points are local maxima of the coordinate projection, layer 1
/// points local minima, independently of the radius.
pub fn extremal_local_extrema() -> PropertyReport {
    let mut prop = Prop::new("extremal-local-extrema", "extremal");
    for ti in 1..=9i64 {
        let t = q(ti, 10);
        for ei in 1..=6i64 {
            let eps = q(ei, 40);
            if eps >= t || eps >= Q::one() - &t {
                continue;
            }
            let p0 = ExtremalPoint::new(t.clone(), 0).unwrap();
            let p1 = ExtremalPoint::new(t.clone(), 1).unwrap();
            prop.case(
                extremal_check_local_extremum(&p0, &eps).unwrap() == Extremum::Max,
                || format!("layer 0 at t={} not a maximum", format_rational(&t)),
            );
            prop.case(
                extremal_check_local_extremum(&p1, &eps).unwrap() == Extremum::Min,
                || format!("layer 1 at t={} not a minimum", format_rational(&t)),
            );
        }
    }
    prop.finish()
}

/// The doubled-space ball images match their closed forms for every base
/// point, flag and grid radius, over all marked subsets on small bases.
pub fn omiljanowski_ball_image(seed: u64, bases: usize, max_points: usize) -> PropertyReport {
    let mut prop = Prop::new("omiljanowski-ball-image", "omiljanowski");
    let mut rng = prop_rng(seed, 601);
    for round in 0..bases {
        // cycle through every size so the exhaustive marked-set sweep on
        // small bases always runs
        let n = 2 + round % (max_points.max(3) - 1);
        let base = gen::metric_space(&mut rng, n, 1);
        let marked_choices: Vec<BTreeSet<String>> = if n <= 4 {
            let pts = base.points().to_vec();
            (0u32..(1 << n))
                .map(|mask| {
                    pts.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect()
        } else {
            (0..4)
                .map(|_| {
                    base.points()
                        .iter()
                        .filter(|_| rng.random_range(0..2u8) == 0)
                        .cloned()
                        .collect()
                })
                .collect()
        };
        for marked in marked_choices {
            let om = OmilSpace::new(base.clone(), marked).unwrap();
            for x in om.base().points() {
                for flag in [0u8, 1u8] {
                    for ei in [1i64, 4, 9] {
                        let eps = q(ei, 20);
                        let via_cobweb = om.omil_ball_image(x, flag, &eps).unwrap();
                        let closed = om.omil_ball_image_closed_form(x, flag, &eps).unwrap();
                        prop.case(via_cobweb == closed, || {
                            format!(
                                "ball image mismatch at {x}, flag {flag}, eps {}",
                                format_rational(&eps)
                            )
                        });
                    }
                }
            }
        }
    }
    prop.finish()
}

/// The nested-system sandwich inclusions hold for every generated system.
pub fn beobachtung_sandwich(
    seed: u64,
    systems: usize,
    max_points: usize,
    max_levels: usize,
) -> PropertyReport {
    let mut prop = Prop::new("beobachtung-sandwich", "beobachtung");
    let mut rng = prop_rng(seed, 602);
    for _ in 0..systems {
        let n = rng.random_range(1..=max_points.max(1));
        let levels = rng.random_range(1..=max_levels.max(1));
        let sys = gen::neighborhood_system(&mut rng, n, levels);
        prop.case(sys.sandwich_check().unwrap(), || {
            format!(
                "sandwich failed for {}",
                serde_json::to_string(&sys).unwrap()
            )
        });
    }
    prop.finish()
}

/// Distance-level facts of the punctured-grid truncation: the origin
/// overrides, symmetry, axis distances, and (for small sizes) the finite
/// discreteness that makes the truncation well-behaved.
pub fn nonfu_distance_facts(max_m: u32) -> PropertyReport {
    let mut prop = Prop::new("nonfu-distance-facts", "nonfu-example");
    for m in 2..=max_m.max(2) {
        let tr = nonfu_truncation(m).unwrap();
        let s = &tr.space;
        prop.case(s.check_axioms().symmetric, || {
            format!("m={m}: asymmetric table")
        });
        prop.case(s.check_axioms().separating, || {
            format!("m={m}: zero distance")
        });
        for n in 1..=m as i64 {
            for mm in 1..=m as i64 {
                let label = format!(
                    "{}:{}",
                    format_rational(&q(1, n)),
                    format_rational(&q(1, mm))
                );
                let d = s.distance("0:0", &label).unwrap();
                prop.case(d == Q::one(), || {
                    format!("m={m}: origin override missing toward {label}")
                });
            }
        }
        for n in 1..=m as i64 {
            let label = format!("{}:0", format_rational(&q(1, n)));
            let d = s.distance("0:0", &label).unwrap();
            prop.case(d == q(1, n), || {
                format!("m={m}: axis distance wrong at {label}")
            });
        }
        // finite separating spaces generate the discrete topology, so the
        // truncation is well-behaved even though the full space is not
        if s.len() <= 16 {
            prop.case(s.is_well_behaved().unwrap(), || {
                format!("m={m}: truncation not well-behaved")
            });
        }
    }
    prop.finish()
}

/// Exhaustive distinct-value count of the Cantor-cube distance: at most
/// `N+1` values on length-`N` strings.
pub fn cantor_cube_value_count(exhaustive_n: usize) -> PropertyReport {
    let mut prop = Prop::new("cantor-cube-value-count", "cantor-cube");
    for n in 1..=exhaustive_n.min(10) {
        let strings: Vec<String> = (0u64..(1 << n))
            .map(|bits| {
                (0..n)
                    .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        let mut values: BTreeSet<Q> = BTreeSet::new();
        for (i, x) in strings.iter().enumerate() {
            for y in &strings[i..] {
                values.insert(cantor_cube_distance(x, y).unwrap());
            }
        }
        prop.case(values.len() <= n + 1, || {
            format!("{} distinct values on length-{n} strings", values.len())
        });
        // every value is zero or a unit fraction 1/k with k <= n
        prop.case(
            values.iter().all(|v| {
                v.is_zero() || (v.numer() == &1.into() && *v.denom() <= (n as i64).into())
            }),
            || format!("unexpected value shape at length {n}"),
        );
    }
    prop.finish()
}

// ---------------------------------------------------------------------
// negative control
// ---------------------------------------------------------------------

/// Deliberately corrupted neighborhood systems must fail the sandwich:
/// this suite is expected to report failures, demonstrating the harness
/// detects broken inputs.
pub fn negative_control_corrupted_sandwich(
    seed: u64,
    systems: usize,
    max_points: usize,
    max_levels: usize,
) -> PropertyReport {
    let mut prop = Prop::new("negative-control-corrupted-sandwich", "beobachtung");
    let mut rng = prop_rng(seed, 701);
    for _ in 0..systems {
        let n = rng.random_range(2..=max_points.max(2));
        let levels = rng.random_range(2..=max_levels.max(2));
        let sys = gen::neighborhood_system(&mut rng, n, levels);
        let corrupted = corrupt_system(&mut rng, &sys);
        // assert the sandwich HOLDS on corrupted input: expected to fail
        prop.case(corrupted.sandwich_check().unwrap(), || {
            format!(
                "corrupted system correctly rejected: {}",
                serde_json::to_string(&corrupted).unwrap_or_default()
            )
        });
    }
    prop.finish()
}

/// Swaps one point's deepest set for a strictly larger non-nested one.
fn corrupt_system(rng: &mut ChaCha8Rng, sys: &NeighborhoodSystem) -> NeighborhoodSystem {
    let pts = sys.points().to_vec();
    let victim = rng.random_range(0..pts.len());
    let mut sets: BTreeMap<String, Vec<BTreeSet<String>>> = BTreeMap::new();
    for (i, label) in pts.iter().enumerate() {
        let mut fams: Vec<BTreeSet<String>> = (1..=sys.levels())
            .map(|n| {
                sys.level_set(i, n)
                    .into_iter()
                    .map(|j| pts[j].clone())
                    .collect()
            })
            .collect();
        if i == victim {
            // deepest level suddenly contains everything: breaks nesting
            // whenever some level above excludes a point
            let deepest = fams.last_mut().unwrap();
            for p in &pts {
                deepest.insert(p.clone());
            }
            // ensure an actual violation by shrinking the first level
            let own = label.clone();
            fams[0] = BTreeSet::from([own]);
        }
        sets.insert(label.clone(), fams);
    }
    NeighborhoodSystem::new_unchecked(pts, &sets).expect("structurally parseable")
}
