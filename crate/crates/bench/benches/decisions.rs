use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use framelab_bench::{moment_curve, pm_ones};
use framelab_core::perturb::{sphere_distance, Subspace};
use framelab_core::{complement_property, decide_wpr, is_full_spark, Tolerance, Vector};

fn wpr(c: &mut Criterion) {
    let f = pm_ones();
    c.bench_function("decide_wpr/pm-ones-4x3", |b| b.iter(|| decide_wpr(black_box(&f)).unwrap()));
    let mut group = c.benchmark_group("decide_wpr/moment-curve");
    for n in [3usize, 4, 5] {
        let f = moment_curve(2 * n - 2, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| decide_wpr(f).unwrap()));
    }
    group.finish();
}

fn spark(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_spark/moment-curve");
    for (m, n) in [(7usize, 4usize), (10, 5), (12, 6)] {
        let f = moment_curve(m, n);
        group.bench_with_input(BenchmarkId::new(format!("{m}x{n}"), m), &f, |b, f| {
            b.iter(|| is_full_spark(f).unwrap())
        });
    }
    group.finish();
}

fn complement(c: &mut Criterion) {
    let mut group = c.benchmark_group("complement_property/moment-curve");
    for (m, n) in [(5usize, 3usize), (9, 5), (13, 7)] {
        let f = moment_curve(m, n);
        group.bench_with_input(BenchmarkId::new(format!("{m}x{n}"), m), &f, |b, f| {
            b.iter(|| complement_property(f).unwrap())
        });
    }
    group.finish();
}

fn distance(c: &mut Criterion) {
    let span = |rows: &[&[f64]]| {
        let v: Vec<_> = rows.iter().map(|r| Vector::from_f64(r)).collect();
        Subspace::span(&v, Tolerance::default()).unwrap()
    };
    let x = span(&[&[1.0, 0.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 0.0, 0.0]]);
    let y = span(&[&[1.0, 0.2, 0.0, 0.1, 0.0], &[0.0, 1.0, 0.3, 0.0, 0.0], &[0.1, 0.0, 1.0, 0.0, 0.4]]);
    c.bench_function("sphere_distance/3-in-5", |b| b.iter(|| sphere_distance(black_box(&x), black_box(&y)).unwrap()));
}

criterion_group!(benches, wpr, spark, complement, distance);
criterion_main!(benches);
