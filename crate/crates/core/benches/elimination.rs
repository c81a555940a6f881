//! One worker against the full pool on the two hot paths: relation search
//! among the six quadrics and a multi-modular kernel.
//!
//! `cargo bench -p syzcert` measures the rayon build;
//! `cargo bench -p syzcert --no-default-features` the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzcert::linalg::{kernel, LinalgConfig, SparseMatrix};
use syzcert::par;
use syzcert::relations::{relation_space, RelationOptions};
use syzcert::verify::catalog::{SourceConstants, U5Variant, TARGET_VARS};

fn pools() -> Vec<usize> {
    let all = par::current_threads();
    if all > 1 {
        vec![1, all]
    } else {
        vec![1]
    }
}

fn relations(c: &mut Criterion) {
    let us = SourceConstants::over(syzcert::field::FieldSpec::Rational).unwrap().all_u(U5Variant::Minus);
    let opts = RelationOptions::default();
    let mut group = c.benchmark_group("relation_space");
    group.sample_size(10);
    for degree in [4, 6] {
        for threads in pools() {
            group.bench_with_input(BenchmarkId::new(format!("degree {degree}"), threads), &threads, |b, &t| {
                b.iter(|| par::with_threads(t, || relation_space(&us, degree, &TARGET_VARS, &opts).unwrap()))
            });
        }
    }
    group.finish();
}

fn modular_kernel(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (nrows, ncols) = (240, 200);
    let rows: Vec<Vec<i64>> = (0..nrows)
        .map(|_| (0..ncols).map(|_| if rng.gen_bool(0.1) { rng.gen_range(-50..50) } else { 0 }).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let m = SparseMatrix::from_ints(&refs);
    let cfg = LinalgConfig { dense_threshold: 0, ..LinalgConfig::default() };
    let mut group = c.benchmark_group("kernel 240x200");
    group.sample_size(10);
    for threads in pools() {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || kernel(&m, &cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, relations, modular_kernel);
criterion_main!(benches);
