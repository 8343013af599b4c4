use criterion::{criterion_group, criterion_main, Criterion};
use sigspend::experiments::{run_sweep, SweepSpec};
use sigspend::{
    chernoff_information, optimal_energy_eu, optimal_energy_pt_fixed, wright_omega,
};
use sigspend_bench::{standard_prospect_fixed, standard_setup};
use std::hint::black_box;

fn bench_eu_optimum(c: &mut Criterion) {
    let (model, econ) = standard_setup();
    c.bench_function("optimal_energy_eu", |b| {
        b.iter(|| optimal_energy_eu(black_box(&model), black_box(&econ)).unwrap())
    });
}

fn bench_pt_fixed_closed_form(c: &mut Criterion) {
    let (model, econ) = standard_setup();
    let pt = standard_prospect_fixed();
    c.bench_function("optimal_energy_pt_fixed", |b| {
        b.iter(|| optimal_energy_pt_fixed(black_box(&model), black_box(&econ), black_box(&pt)).unwrap())
    });
}

fn bench_wright_omega(c: &mut Criterion) {
    c.bench_function("wright_omega sweep [-20, 20]", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..=400 {
                let x = -20.0 + i as f64 * 0.1;
                acc += wright_omega(black_box(x)).unwrap();
            }
            acc
        })
    });
}

fn bench_chernoff(c: &mut Criterion) {
    let p0 = [0.8, 0.15, 0.05];
    let p1 = [0.2, 0.3, 0.5];
    c.bench_function("chernoff_information", |b| {
        b.iter(|| chernoff_information(black_box(&p0), black_box(&p1)).unwrap())
    });
}

fn bench_default_sweep(c: &mut Criterion) {
    let spec = SweepSpec::default();
    c.bench_function("default beta sweep (100 steps)", |b| {
        b.iter(|| run_sweep(black_box(&spec)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eu_optimum,
    bench_pt_fixed_closed_form,
    bench_wright_omega,
    bench_chernoff,
    bench_default_sweep
);
criterion_main!(benches);
