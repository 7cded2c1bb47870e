use binomdiv_core::conjectures::{conj_1_1_scan, conj_1_3_scan, f_search};
use binomdiv_core::inequalities::{exhaustive_scan, InequalityTheorem};
use binomdiv_core::theorems::{sweep, SweepBounds, TheoremId};
use criterion::{criterion_group, criterion_main, Criterion};

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("f(97,81)", |b| b.iter(|| f_search(97, 81, 5000).unwrap()));
    g.bench_function("f(22,200) cap 10000", |b| b.iter(|| f_search(22, 200, 10_000).unwrap()));
    let bounds = SweepBounds {
        k_max: 10,
        l_max: 10,
        m_max: 50,
        n_max: 200,
    };
    g.bench_function("sweep 1.4", |b| b.iter(|| sweep(TheoremId::T1_4, bounds).unwrap()));
    g.bench_function("residues 2.1 m<=100", |b| {
        b.iter(|| exhaustive_scan(InequalityTheorem::T2_1, 100).unwrap())
    });
    g.bench_function("conjecture 1.1 m<=16 k<=8 n<=2000", |b| {
        b.iter(|| conj_1_1_scan(16, 8, 2000).unwrap())
    });
    g.bench_function("conjecture 1.3 k,l<=8 n<=100", |b| {
        b.iter(|| conj_1_3_scan(8, 8, 100).unwrap())
    });
    g.finish();
}

criterion_group!(benches, searches);
criterion_main!(benches);
