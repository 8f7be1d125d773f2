use criterion::{criterion_group, criterion_main, Criterion};
use heplus_bench::uniform_fixture;
use heplus_core::{correction_oracle, default_params, purity_trace, QuadratureSpec};
use std::hint::black_box;

fn bench_purity_trace(c: &mut Criterion) {
    let mut g = c.benchmark_group("purity_trace");
    for dim in [2u32, 10] {
        let f = uniform_fixture(dim);
        g.bench_function(format!("{dim}x{dim}_2000_points"), |b| {
            b.iter(|| purity_trace(&f.state, &f.table, &f.spectra, &f.params, black_box(10.0), 2000).unwrap())
        });
    }
    g.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let p = default_params();
    let q = QuadratureSpec::default();
    c.bench_function("correction_oracle_n1_N3", |b| {
        b.iter(|| correction_oracle(black_box(1), black_box(3), &p, &q).unwrap())
    });
}

criterion_group!(benches, bench_purity_trace, bench_oracle);
criterion_main!(benches);
