//! Cross-validation of the closed-form graph distance against the
//! discretized shortest-path oracle, and of symbolic cobweb balls against
//! direct distance evaluation.

use cobweb_core::gen;
use cobweb_core::rational::{q, Q};
use cobweb_core::{CobwebSpace, GammaPoint, GammaSpace};
use num_traits::{One, Signed};
use rand::Rng;

fn labels(n: usize) -> Vec<String> {
    gen::labels(n)
}

#[test]
fn frozen_disjoint_edge_value() {
    // midpoints of disjoint edges: half + whole edge + half
    let g = GammaSpace::new(labels(4)).unwrap();
    let p = GammaPoint::interior("p0", "p1", q(1, 2)).unwrap();
    let qq = GammaPoint::interior("p2", "p3", q(1, 2)).unwrap();
    assert_eq!(g.distance(&p, &qq).unwrap(), q(2, 1));
    assert_eq!(g.oracle_distance(&p, &qq, 64).unwrap(), q(2, 1));
}

#[test]
fn frozen_shared_vertex_route() {
    // (x,y,3/4) to (y,z,3/4): through the shared vertex, 1/4 + 3/4
    let g = GammaSpace::new(labels(3)).unwrap();
    let p = GammaPoint::interior("p0", "p1", q(3, 4)).unwrap();
    let qq = GammaPoint::interior("p1", "p2", q(3, 4)).unwrap();
    assert_eq!(g.distance(&p, &qq).unwrap(), Q::one());
    assert_eq!(g.oracle_distance(&p, &qq, 64).unwrap(), Q::one());
}

#[test]
fn oracle_matches_closed_form_on_grids() {
    let k = 64u32;
    let tolerance = q(2, 64);
    let mut rng = gen::rng(70);
    for _ in 0..60 {
        let n = rng.random_range(2..=5usize);
        let vertices = labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        for _ in 0..4 {
            let p = gen::gamma_point(&mut rng, &vertices, k as i64);
            let qq = gen::gamma_point(&mut rng, &vertices, k as i64);
            let closed = g.distance(&p, &qq).unwrap();
            let oracle = g.oracle_distance(&p, &qq, k).unwrap();
            assert!((&closed - &oracle).abs() <= tolerance);
            // all geodesic waypoints are vertices, so grid inputs are exact
            assert_eq!(closed, oracle);
        }
    }
}

#[test]
fn oracle_agreement_on_every_grid_pair() {
    // all grid-point pairs of a 3-vertex graph at k=8: the bound 2/k and,
    // for grid inputs, exact agreement
    let k = 8u32;
    let g = GammaSpace::new(labels(3)).unwrap();
    let mut grid: Vec<GammaPoint> = labels(3)
        .iter()
        .map(|v| GammaPoint::Vertex(v.clone()))
        .collect();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for step in 1..k as i64 {
                grid.push(
                    GammaPoint::interior(format!("p{i}"), format!("p{j}"), q(step, k as i64))
                        .unwrap(),
                );
            }
        }
    }
    let tolerance = q(2, k as i64);
    for p in &grid {
        for qq in &grid {
            let closed = g.distance(p, qq).unwrap();
            let oracle = g.oracle_distance(p, qq, k).unwrap();
            assert!((&closed - &oracle).abs() <= tolerance);
            assert_eq!(closed, oracle);
        }
    }
}

#[test]
fn oracle_exactness_on_coarse_grid() {
    // k=4 grid still contains the geodesic for quarter-point pairs
    let g = GammaSpace::new(labels(2)).unwrap();
    let p = GammaPoint::interior("p0", "p1", q(1, 4)).unwrap();
    let qq = GammaPoint::interior("p0", "p1", q(3, 4)).unwrap();
    assert_eq!(g.oracle_distance(&p, &qq, 4).unwrap(), q(1, 2));
}

#[test]
fn cob_ball_examples_against_sampled_distances() {
    // d(a,b)=d(b,a)=3/10; the symbolic balls must match raw membership
    let base: cobweb_core::DistanceSpace =
        serde_json::from_str(r#"{"points":["a","b"],"dist":{"a,b":"3/10","b,a":"3/10"}}"#).unwrap();
    let cw = CobwebSpace::new(base).unwrap();
    for (center, r) in [
        (GammaPoint::Vertex("a".into()), q(2, 5)),
        (GammaPoint::Vertex("a".into()), q(1, 5)),
        (GammaPoint::interior("a", "b", q(1, 2)).unwrap(), q(1, 4)),
    ] {
        let ball = cw.cob_ball(&center, &r).unwrap();
        // dense parameter sweep on both edges
        for (x, y) in [("a", "b"), ("b", "a")] {
            for i in 1..200i64 {
                let t = q(i, 200);
                let p = GammaPoint::interior(x, y, t).unwrap();
                if !cw.contains(&p).unwrap() {
                    assert!(!ball.contains_gamma(&p));
                    continue;
                }
                let near = cw.distance(&center, &p).unwrap() < r;
                assert_eq!(near, ball.contains_gamma(&p), "at {x},{y},{i}/200");
            }
        }
        for v in ["a", "b"] {
            let p = GammaPoint::Vertex(v.into());
            let near = cw.distance(&center, &p).unwrap() < r;
            assert_eq!(near, ball.contains_gamma(&p));
        }
    }
}

#[test]
fn midball_stays_on_its_edge() {
    let g = GammaSpace::new(labels(4)).unwrap();
    let center = GammaPoint::interior("p0", "p1", q(1, 2)).unwrap();
    let half = q(1, 2);
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            for step in 1..32i64 {
                let p =
                    GammaPoint::interior(format!("p{i}"), format!("p{j}"), q(step, 32)).unwrap();
                let inside = g.distance(&center, &p).unwrap() < half;
                let on_edge = i == 0 && j == 1;
                assert!(!inside || on_edge);
            }
        }
    }
}
