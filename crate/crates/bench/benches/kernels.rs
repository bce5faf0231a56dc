use bcncat_bench::{random_bcn, random_matrix};
use bcncat_core::{categorize_all, compute_f, power_trace, Analysis, CategorizeOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn bool_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("bool_mul");
    for dim in [256, 1024] {
        let a = random_matrix(dim, 0.01, 1);
        let b = random_matrix(dim, 0.01, 2);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| black_box(&a).bool_mul(black_box(&b)))
        });
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let m = random_bcn(8, 1, 3).one_step_matrix();
    c.bench_function("compute_f/256", |b| b.iter(|| compute_f(black_box(&m)).unwrap()));
}

fn categorize(c: &mut Criterion) {
    let bcn = random_bcn(8, 1, 4);
    c.bench_function("categorize_all/256", |b| {
        b.iter(|| {
            let ctx = Analysis::from_bcn(black_box(&bcn));
            categorize_all(&ctx, CategorizeOptions::default())
        })
    });
}

fn oracle(c: &mut Criterion) {
    let m = random_bcn(8, 1, 5).one_step_matrix();
    c.bench_function("power_trace/256", |b| b.iter(|| power_trace(black_box(&m)).unwrap()));
}

criterion_group!(benches, bool_mul, closure, categorize, oracle);
criterion_main!(benches);
