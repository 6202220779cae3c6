//! Property-based invariants over seeded generators.

use cobweb_core::gen;
use cobweb_core::rational::{q, Q};
use cobweb_core::{
    ArcUnion, CobwebSpace, DistanceSpace, FiniteTopology, GammaSpace, Thread, Tower,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The graph metric axioms hold exactly for arbitrary seeds.
    #[test]
    fn gamma_metric_axioms(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(2..=8usize);
        let vertices = gen::labels(n);
        let g = GammaSpace::new(vertices.clone()).unwrap();
        let pts: Vec<_> = (0..6).map(|_| gen::gamma_point(&mut rng, &vertices, 16)).collect();
        for a in &pts {
            for b in &pts {
                let dab = g.distance(a, b).unwrap();
                prop_assert_eq!(&dab, &g.distance(b, a).unwrap());
                prop_assert_eq!(dab.is_zero(), a == b);
                for c in &pts {
                    let dac = g.distance(a, c).unwrap();
                    let dbc = g.distance(b, c).unwrap();
                    prop_assert!(dac <= &dab + &dbc);
                }
            }
        }
    }

    /// Balls grow with the radius and always hold their center.
    #[test]
    fn ball_monotonicity(seed in any::<u64>(), i in 1i64..40, j in 0i64..20) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(1..=7usize);
        let space = gen::distance_space(&mut rng, n);
        let x = space.points()[0].clone();
        let r1 = q(i, 20);
        let r2 = q(i + j, 20);
        let b1 = space.ball(&x, &r1).unwrap();
        let b2 = space.ball(&x, &r2).unwrap();
        prop_assert!(b1.contains(&x));
        prop_assert!(b1.is_subset(&b2));
    }

    /// Interval refinement for the limit metric: sound, nested, bounded.
    #[test]
    fn tower_interval_refinement(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(2..=5usize);
        let base = gen::distance_space(&mut rng, n);
        let tower = Tower::new(base);
        let a = gen::thread(&mut rng, &tower, 5, 16);
        let b = gen::thread(&mut rng, &tower, 5, 16);
        let exact = tower.rho_infty(&a, &b).unwrap();
        let mut prev: Option<cobweb_core::RhoInterval> = None;
        for n in 1..=10usize {
            let iv = tower.rho_infty_interval(&a, &b, n).unwrap();
            prop_assert!(iv.contains(&exact));
            prop_assert!(iv.width() <= q(2, (n + 1) as i64));
            if let Some(p) = &prev {
                prop_assert!(iv.within(p));
            }
            prev = Some(iv);
        }
    }

    /// JSON round trips are lossless for the wire formats.
    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(1..=6usize);
        let space = gen::distance_space(&mut rng, n);
        let text = serde_json::to_string(&space).unwrap();
        let back: DistanceSpace = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&space, &back);

        let m = rng.random_range(0..=6usize);
        let top = gen::topology(&mut rng, m);
        let text = serde_json::to_string(&top).unwrap();
        let back: FiniteTopology = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&top, &back);

        if n >= 2 {
            let cw = CobwebSpace::new(space).unwrap();
            let x = cw.base().points()[0].clone();
            let fiber = cw.fiber(&x).unwrap();
            let text = serde_json::to_string(&fiber).unwrap();
            let back: ArcUnion = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&fiber, &back);
        }
    }

    /// Thread serialization survives the wire round trip.
    #[test]
    fn thread_round_trip(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(2..=5usize);
        let base = gen::distance_space(&mut rng, n);
        let tower = Tower::new(base);
        let th = gen::thread(&mut rng, &tower, 4, 16);
        let text = serde_json::to_string(&th).unwrap();
        let spec: cobweb_core::tower::ThreadSpec = serde_json::from_str(&text).unwrap();
        let back: Thread = tower.thread(spec.prefix).unwrap();
        prop_assert_eq!(&th, &back);
    }

    /// Compression respects the ball-image identity for arbitrary seeds.
    #[test]
    fn ball_image_identity(seed in any::<u64>(), i in 1i64..=9) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(2..=7usize);
        let cw = CobwebSpace::new(gen::distance_space(&mut rng, n)).unwrap();
        let r = q(i, 20);
        for x in cw.base().points() {
            prop_assert_eq!(cw.ball_image(x, &r).unwrap(), cw.base().ball(x, &r).unwrap());
        }
    }
}

/// The generated-topology membership rule agrees with the raw openness
/// quantifier (brute-forced over every ball radius) on small spaces.
#[test]
fn generated_topology_against_raw_definition() {
    let mut rng = gen::rng(99);
    for _ in 0..40 {
        let n = rng.random_range(1..=5usize);
        let space = gen::distance_space(&mut rng, n);
        let top = space.generated_topology().unwrap();
        // raw check: E open iff forall x in E exists critical r with ball(x,r) ⊆ E
        let mut radii: Vec<Q> = Vec::new();
        for x in space.points() {
            for y in space.points() {
                let d = space.distance(x, y).unwrap();
                if !d.is_zero() {
                    radii.push(d);
                }
            }
        }
        radii.push(q(1000, 1));
        for mask in 0u64..(1 << n) {
            let members: Vec<&String> = space
                .points()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p)
                .collect();
            let open_raw = members.iter().all(|x| {
                radii.iter().any(|r| {
                    space
                        .ball(x, r)
                        .unwrap()
                        .iter()
                        .all(|z| members.iter().any(|m| *m == z))
                })
            });
            assert_eq!(open_raw, top.is_open_mask(mask));
        }
    }
}
