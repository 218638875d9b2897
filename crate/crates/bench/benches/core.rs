use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mcur_core::fixtures;
use mcur_core::rational::int;
use mcur_core::{
    flat_norm, greedy_decompose, is_simple, variational_oracle, Chain1, PixelSet, SearchMode, SimplicityMethod,
};

fn tail_chain(cx: &mcur_core::MetricComplex) -> Chain1 {
    Chain1::from_named(cx, [("ab", -6), ("bc", -1), ("ag", 1)]).unwrap()
}

fn flat(c: &mut Criterion) {
    let cx = fixtures::annulus();
    let t = fixtures::annulus_inner_cycle(&cx);
    c.bench_function("flat_norm/annulus_inner", |b| b.iter(|| flat_norm(&cx, black_box(&t)).unwrap()));
    let tet = fixtures::tetrahedron();
    let edges: Vec<(usize, i64)> = (0..tet.edges().len()).map(|e| (e, 2 - (e as i64 % 5))).collect();
    let t = Chain1::from_coeffs(&tet, edges).unwrap();
    c.bench_function("flat_norm/tetrahedron_mixed", |b| b.iter(|| flat_norm(&tet, black_box(&t)).unwrap()));
}

fn decompose(c: &mut Criterion) {
    let cx = fixtures::figure_eight_with_tail();
    let t = tail_chain(&cx);
    c.bench_function("greedy/exact", |b| b.iter(|| greedy_decompose(&cx, black_box(&t), SearchMode::Exact).unwrap()));
    c.bench_function("greedy/heuristic", |b| {
        b.iter(|| greedy_decompose(&cx, black_box(&t), SearchMode::Heuristic).unwrap())
    });
    let alpha = int(3) / int(2);
    c.bench_function("variational_oracle", |b| b.iter(|| variational_oracle(&cx, black_box(&t), &alpha).unwrap()));
}

fn planar(c: &mut Criterion) {
    let rows: Vec<Vec<bool>> = (0..8).map(|y| (0..8).map(|x| (x + y) % 5 != 0).collect()).collect();
    let a = PixelSet::from_rows(&rows).unwrap();
    for (name, method) in
        [("boundary", SimplicityMethod::ViaBoundary), ("connectivity", SimplicityMethod::ViaConnectivity)]
    {
        c.bench_function(&format!("is_simple/{name}"), |b| b.iter(|| is_simple(black_box(&a), method).unwrap()));
    }
}

criterion_group!(benches, flat, decompose, planar);
criterion_main!(benches);
