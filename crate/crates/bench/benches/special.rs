use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ksf_bench::workload;
use ksf_core::beta::{beta_k, beta_k_integral, beta_k_series};
use ksf_core::furdui::{furdui_oracle, thm31_series, thm34_recursion};
use ksf_core::hadamard::{alpha0_solve, hadamard_k};
use ksf_core::kfun::{gamma_k, psi_k, KScale};
use ksf_core::registry::{run_all, GridSpec};

fn point_functions(c: &mut Criterion) {
    let points = workload();
    let mut group = c.benchmark_group("pointwise");
    group.bench_function("gamma_k", |b| {
        b.iter(|| {
            points
                .iter()
                .map(|&(k, x)| gamma_k(k, black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
    group.bench_function("psi_k", |b| {
        b.iter(|| {
            points
                .iter()
                .map(|&(k, x)| psi_k(k, black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
    group.bench_function("beta_k", |b| {
        b.iter(|| {
            points
                .iter()
                .map(|&(k, x)| beta_k(k, black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
    group.bench_function("hadamard_k", |b| {
        b.iter(|| points.iter().map(|&(k, x)| hadamard_k(k, black_box(x))).sum::<f64>())
    });
    group.finish();
}

fn beta_routes(c: &mut Criterion) {
    let k = KScale::new(1.0).unwrap();
    let mut group = c.benchmark_group("beta_routes");
    group.bench_function("digamma_difference", |b| b.iter(|| beta_k(k, black_box(0.7)).unwrap()));
    group.bench_function("alternating_series", |b| {
        b.iter(|| beta_k_series(k, black_box(0.7), 1e-15).unwrap().value)
    });
    group.bench_function("quadrature", |b| {
        b.iter(|| beta_k_integral(k, black_box(0.7), 1e-12).unwrap().value)
    });
    group.finish();
}

fn moment_integrals(c: &mut Criterion) {
    let k = KScale::new(2.0).unwrap();
    let mut group = c.benchmark_group("moment_integral");
    group.bench_function("oracle", |b| {
        b.iter(|| furdui_oracle(k, black_box(3), 1e-12).unwrap().value)
    });
    group.bench_function("zeta_series", |b| {
        b.iter(|| thm31_series(k, black_box(3), 1e-12).unwrap().value)
    });
    group.bench_function("recursion_n2", |b| {
        b.iter(|| thm34_recursion(k, black_box(3), 2, 1e-11).unwrap().value)
    });
    group.finish();
}

fn solvers(c: &mut Criterion) {
    c.bench_function("alpha0_solve", |b| {
        b.iter(|| alpha0_solve(KScale::new(black_box(1.0)).unwrap(), 1e-10).unwrap().root)
    });
    let mut group = c.benchmark_group("registry");
    group.sample_size(10);
    group.bench_function("run_all_default_grid", |b| {
        b.iter(|| run_all(&GridSpec::default()).unwrap().reports.len())
    });
    group.finish();
}

criterion_group!(benches, point_functions, beta_routes, moment_integrals, solvers);
criterion_main!(benches);
