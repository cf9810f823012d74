use birkhoff::echelon::{fraction_free_rref, gauss_jordan};
use birkhoff::geometry::{verify_irreducibility, VerifyConfig};
use birkhoff::{canonical_decomposition, ext1_dim, hom_basis, PrimeField, Rationals};
use birkhoff_bench::{canonical, golden_pair, integer_matrix};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn echelon(c: &mut Criterion) {
    let q = integer_matrix(&Rationals, 24);
    let p = integer_matrix(&PrimeField::default(), 24);
    c.bench_function("gauss_jordan rational 24", |b| b.iter(|| gauss_jordan(&Rationals, black_box(&q))));
    c.bench_function("fraction_free_rref 24", |b| b.iter(|| fraction_free_rref(black_box(&q))));
    c.bench_function("gauss_jordan prime 24", |b| b.iter(|| gauss_jordan(&PrimeField::default(), black_box(&p))));
}

fn decomposition(c: &mut Criterion) {
    let s = golden_pair();
    c.bench_function("decompose golden", |b| b.iter(|| canonical_decomposition(black_box(&s.p), black_box(&s.q))));
}

fn homs(c: &mut Criterion) {
    let a = canonical(&Rationals, &[4, 3, 1], &[3, 2], 4);
    let n = canonical(&Rationals, &[3, 2], &[4, 1, 1], 4);
    c.bench_function("hom_basis 8x5 to 5x6", |b| b.iter(|| hom_basis(&Rationals, black_box(&a), black_box(&n))));
    c.bench_function("ext1_dim 8x5 to 5x6", |b| b.iter(|| ext1_dim(&Rationals, black_box(&a), black_box(&n))));
}

fn certificates(c: &mut Criterion) {
    let cfg = VerifyConfig::default();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("m=3 d=(5,5)", |b| b.iter(|| verify_irreducibility(3, 5, 5, &cfg)));
    group.bench_function("m=4 d=(4,4)", |b| b.iter(|| verify_irreducibility(4, 4, 4, &cfg)));
    group.finish();
}

criterion_group!(benches, echelon, decomposition, homs, certificates);
criterion_main!(benches);
