use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use plane4_core::alexander::{alexander_matrix, alexander_poly, gassner, link_alexander_poly};
use plane4_core::arrangements::ArrangementSpec;
use plane4_core::charvar::{count_common_zeros, subtori_tors, tors_count, Subtorus};

fn spec(text: &str) -> ArrangementSpec {
    ArrangementSpec::parse(text).unwrap()
}

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomials");
    group.sample_size(20);
    let k = spec("cat:K");
    let l = spec("cat:L");
    let xi = l.resolve().unwrap().xi;
    group.bench_function("gassner L", |b| {
        b.iter(|| gassner(black_box(&xi), None).unwrap())
    });
    group.bench_function("alexander matrix K", |b| {
        b.iter(|| alexander_matrix(black_box(&k), None).unwrap())
    });
    group.bench_function("alexander poly L", |b| {
        b.iter(|| alexander_poly(black_box(&l), None).unwrap())
    });
    group.bench_function("link poly L", |b| {
        b.iter(|| link_alexander_poly(black_box(&l)).unwrap())
    });
    group.finish();
}

fn torsion(c: &mut Criterion) {
    let mut group = c.benchmark_group("torsion");
    group.sample_size(10);
    let l = spec("cat:L");
    let delta = link_alexander_poly(&l).unwrap();
    group.bench_function("zeros of link poly L, p = 3", |b| {
        b.iter(|| count_common_zeros(std::slice::from_ref(black_box(&delta)), 3, 6).unwrap())
    });
    let m = spec("cat:M");
    group.bench_function("Tors_{2,4}(M)", |b| {
        b.iter(|| tors_count(black_box(&m), 2, 4).unwrap())
    });
    let cable = spec("cable(cat:K,k=6,sign=+,r=2)");
    group.bench_function("Tors_{3,1}(K{2})", |b| {
        b.iter(|| tors_count(black_box(&cable), 3, 1).unwrap())
    });
    let tori: Vec<Subtorus> = ["t6=1", "t6=t3^2", "t6=t4^2", "t6=t4^2*t3^-2"]
        .iter()
        .map(|t| Subtorus::parse(t, 6).unwrap())
        .collect();
    group.bench_function("Möbius count V_1(K), p = 3", |b| {
        b.iter(|| subtori_tors(black_box(&tori), 3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, polynomials, torsion);
criterion_main!(benches);
