use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use supoly::families::FamilyId;
use supoly::orthogonality::gauss_rule;
use supoly::quadrature::{compare_grid, default_grid, integral_value, series_value, IntegralSpec};

fn gauss(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_rule");
    for size in [20, 100, 400] {
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, &size| {
            b.iter(|| gauss_rule(FamilyId::Case1, 4, black_box(size), 1.0).unwrap())
        });
    }
    group.finish();
}

fn point(c: &mut Criterion) {
    let spec = IntegralSpec::new(FamilyId::Case1, 3, 0.3, 0.5, 1e-10).unwrap();
    c.bench_function("integral_value", |b| b.iter(|| integral_value(black_box(&spec)).unwrap()));
    c.bench_function("series_value", |b| {
        b.iter(|| series_value(FamilyId::Case1, 3, black_box(0.3), 0.5, 160, 1e-10).unwrap())
    });
}

fn grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("compare_grid");
    group.sample_size(10);
    let points = default_grid();
    group.bench_function("case1_m3", |b| b.iter(|| compare_grid(FamilyId::Case1, 3, black_box(&points), 1e-10).unwrap()));
    group.finish();
}

criterion_group!(benches, gauss, point, grid);
criterion_main!(benches);
