use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use concordance_bench::{axes, constant, desk_sequence, long_word, slice_seed, torus_sum};
use concordance_core::commutator::presentations;
use concordance_core::seifert::library;
use concordance_core::{
    alexander_module, build_family, certify, find_sequence, fox_derivative, linear_combination, rho_finite,
    rho_integral, tuples_p, CandidateFamily, FieldKind,
};

fn signatures(c: &mut Criterion) {
    let mut g = c.benchmark_group("signature");
    for qs in [&[5u64][..], &[5, 7], &[5, 7, 9]] {
        let k = torus_sum(qs);
        g.bench_with_input(BenchmarkId::new("profile", k.size()), &k, |b, k| b.iter(|| k.profile()));
    }
    let k = torus_sum(&[5, 7]);
    for d in [3u64, 31, 101] {
        g.bench_with_input(BenchmarkId::new("rho_finite", d), &d, |b, &d| b.iter(|| rho_finite(&k, d)));
    }
    let tol = constant(1) / constant(1 << 40);
    g.bench_function("rho_integral/trefoil", |b| b.iter(|| rho_integral(&library::trefoil(), &tol)));
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("jsequence");
    g.sample_size(10);
    let fam = CandidateFamily::default_library();
    for count in [1usize, 2] {
        g.bench_with_input(BenchmarkId::new("find", count), &count, |b, &n| {
            b.iter(|| find_sequence(&constant(10), n, &fam, 11, 3).unwrap())
        });
    }
    g.finish();
}

fn ledger(c: &mut Criterion) {
    let seq = desk_sequence();
    let family = build_family(&slice_seed(), &axes(), &seq).unwrap();
    let mut g = c.benchmark_group("certify");
    for coeffs in [vec![1i64, 0], vec![2, -1], vec![3, 2]] {
        let j = linear_combination(&coeffs, &family).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{coeffs:?}")), &j, |b, j| {
            b.iter(|| certify(j, &seq, &constant(10)).unwrap())
        });
    }
    g.finish();
}

fn algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("algebra");
    for n in [1usize, 8, 32] {
        let w = long_word(n);
        g.bench_with_input(BenchmarkId::new("fox_derivative", w.len()), &w, |b, w| {
            b.iter(|| fox_derivative(black_box(w), 1).unwrap())
        });
    }
    g.bench_function("tuples_p/level2_genus2", |b| b.iter(|| tuples_p(2, 2, None).unwrap()));
    let t = presentations::trefoil();
    let f8 = presentations::figure_eight();
    g.bench_function("alexander_module/trefoil", |b| b.iter(|| alexander_module(&t, FieldKind::Rationals).unwrap()));
    g.bench_function("alexander_module/figure_eight_mod3", |b| {
        b.iter(|| alexander_module(&f8, FieldKind::ModP(3)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, signatures, search, ledger, algebra);
criterion_main!(benches);
