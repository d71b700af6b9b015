use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use strichartz_core::bridge::{f_app_series, gram_matrix_exact};
use strichartz_core::oracle::{q_form_numeric, QuadratureConfig};
use strichartz_core::special::SpecialSeriesPair;
use strichartz_core::spectrum::{certify_top2, g_series, lambda_fast_sequence, quarter_search_all};

fn spectrum(c: &mut Criterion) {
    c.bench_function("lambda_fast_sequence n=2000", |b| b.iter(|| lambda_fast_sequence(black_box(1), 2000)));
    c.bench_function("g_series n=300", |b| b.iter(|| g_series(black_box(3), 300)));
    c.bench_function("certify_top2 cutoff=2000", |b| b.iter(|| certify_top2(black_box(0), 2000)));
    let mut slow = c.benchmark_group("sweeps");
    slow.sample_size(10);
    slow.bench_function("quarter_search_all n=20000", |b| b.iter(|| quarter_search_all(black_box(20_000))));
    slow.finish();
}

fn special(c: &mut Criterion) {
    let f = f_app_series(2, 10).unwrap();
    let mut g = c.benchmark_group("special");
    g.sample_size(10);
    g.bench_function("analyze F2 order 10", |b| b.iter(|| SpecialSeriesPair::analyze(black_box(&f), 10)));
    g.bench_function("gram kappa=3 S=4", |b| b.iter(|| gram_matrix_exact(black_box(3), 4)));
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("q_form kappa=1", |b| {
        b.iter(|| q_form_numeric(black_box(1), Complex64::new(std::f64::consts::PI, 0.0), &cfg))
    });
    g.finish();
}

criterion_group!(benches, spectrum, special, oracle);
criterion_main!(benches);
