//! Distance evaluation benchmarks: the closed form, the shortest-path
//! oracle it is validated against, and the limit metric on threads.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use cobweb_core::gen;
use cobweb_core::{GammaSpace, Tower};

fn bench_gamma_distance(c: &mut Criterion) {
    let mut rng = gen::rng(1);
    let vertices = gen::labels(8);
    let g = GammaSpace::new(vertices.clone()).unwrap();
    let pairs: Vec<_> = (0..64)
        .map(|_| {
            (
                gen::gamma_point(&mut rng, &vertices, 64),
                gen::gamma_point(&mut rng, &vertices, 64),
            )
        })
        .collect();
    c.bench_function("gamma_distance_closed_form_64_pairs", |b| {
        b.iter(|| {
            for (p, q) in &pairs {
                black_box(g.distance(p, q).unwrap());
            }
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let mut rng = gen::rng(2);
    let vertices = gen::labels(4);
    let g = GammaSpace::new(vertices.clone()).unwrap();
    let p = gen::gamma_point(&mut rng, &vertices, 16);
    let q = gen::gamma_point(&mut rng, &vertices, 16);
    c.bench_function("gamma_distance_oracle_k16", |b| {
        b.iter(|| black_box(g.oracle_distance(&p, &q, 16).unwrap()))
    });
}

fn bench_rho_infty(c: &mut Criterion) {
    let mut rng = gen::rng(3);
    let tower = Tower::new(gen::metric_space(&mut rng, 5, 1));
    let threads: Vec<_> = (0..16)
        .map(|_| gen::thread(&mut rng, &tower, 6, 16))
        .collect();
    c.bench_function("rho_infty_16_thread_pairs", |b| {
        b.iter(|| {
            for a in &threads {
                for bt in &threads {
                    black_box(tower.rho_infty(a, bt).unwrap());
                }
            }
        })
    });
}

fn bench_thread_generation(c: &mut Criterion) {
    let mut seed_rng = gen::rng(4);
    let tower = Tower::new(gen::metric_space(&mut seed_rng, 5, 1));
    c.bench_function("thread_generation_depth6", |b| {
        b.iter_batched(
            || gen::rng(11),
            |mut rng| black_box(gen::thread(&mut rng, &tower, 6, 16)),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_gamma_distance,
    bench_oracle,
    bench_rho_infty,
    bench_thread_generation
);
criterion_main!(benches);
