use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use selfspec::{
    coefficients, eigenvalues, heat_trace, make_boundary, named, numeric_zeta, numeric_zeta_prime_zero,
    BoundaryParams, Complex64, NamedBc,
};

fn cases() -> Vec<(&'static str, BoundaryParams)> {
    vec![
        ("dirichlet", named(NamedBc::Dirichlet).unwrap()),
        ("periodic", named(NamedBc::Periodic).unwrap()),
        ("generic", make_boundary(1.1, 0.4, [0.3, 0.0, 0.91f64.sqrt()]).unwrap()),
    ]
}

fn bench_eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenvalues");
    for (name, bc) in cases() {
        for k_max in [100.0, 1000.0] {
            group.bench_with_input(BenchmarkId::new(name, k_max), &k_max, |b, &k| {
                b.iter(|| eigenvalues(black_box(&bc), 1.0, k).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_heat(c: &mut Criterion) {
    let bc = make_boundary(1.1, 0.4, [0.3, 0.0, 0.91f64.sqrt()]).unwrap();
    let spec = eigenvalues(&bc, 1.0, 400.0).unwrap();
    c.bench_function("heat_trace/t=1e-3", |b| b.iter(|| heat_trace(black_box(&spec), 1e-3).unwrap()));
    c.bench_function("coefficients/m=20", |b| b.iter(|| coefficients(black_box(&bc), 1.0, 20.0).unwrap()));
}

fn bench_zeta(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta");
    group.sample_size(20);
    for (name, bc) in cases() {
        group.bench_function(BenchmarkId::new("prime_zero", name), |b| {
            b.iter(|| numeric_zeta_prime_zero(black_box(&bc), 1.0).unwrap())
        });
        group.bench_function(BenchmarkId::new("s=-1.3", name), |b| {
            b.iter(|| numeric_zeta(black_box(&bc), 1.0, Complex64::new(-1.3, 0.0), 6).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_eigenvalues, bench_heat, bench_zeta);
criterion_main!(benches);
