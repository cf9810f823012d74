//! Hom and Ext dimensions against independently assembled oracles.

use birkhoff::field::{Field, PrimeField, Rationals};
use birkhoff::linalg::{nullspace_basis, rank};
use birkhoff::module::{build_canonical_module, direct_sum, end_dim, ext1_dim, hom_basis, hom_dim, AModule};
use birkhoff::pairs::PartitionPair;
use birkhoff::partition::{enumerate_partitions, hom_dim_lambda, Partition};
use birkhoff::Matrix;

type Q = num_rational::BigRational;

fn canon<F: Field>(f: &F, p: &[usize], q: &[usize], m: usize) -> AModule<F::Elem> {
    let s = PartitionPair::from_parts(p, q, m).unwrap();
    build_canonical_module(f, &s.p, &s.q).unwrap()
}

/// `vec(A X B) = (A kron B^T) vec(X)` for row-major `vec`.
fn kron<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows() * b.cols(), a.cols() * b.rows(), |r, c| {
        let (i, j) = (r / b.cols(), r % b.cols());
        let (k, l) = (c / b.rows(), c % b.rows());
        f.mul(a.get(i, k), b.get(l, j))
    })
}

/// Hom system built from Kronecker products, a separate code path from the
/// library's block assembler.
fn hom_oracle<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> usize {
    let (d0m, d1m) = a.dims();
    let (d0n, d1n) = b.dims();
    let id = |n| Matrix::identity(f, n);
    let z = |r, c| Matrix::zeros(f, r, c);
    // f0 M0 - N0 f0
    let r1 = kron(f, &id(d0n), a.m0()).sub(f, &kron(f, b.m0(), &id(d0m))).unwrap();
    // f1 M1 - N1 f1
    let r2 = kron(f, &id(d1n), a.m1()).sub(f, &kron(f, b.m1(), &id(d1m))).unwrap();
    // f0 hM - hN f1
    let r3a = kron(f, &id(d0n), a.h());
    let r3b = kron(f, b.h(), &id(d1m)).neg(f);
    let top = Matrix::hstack(d0n * d0m, &[&r1, &z(d0n * d0m, d1n * d1m)]).unwrap();
    let mid = Matrix::hstack(d1n * d1m, &[&z(d1n * d1m, d0n * d0m), &r2]).unwrap();
    let bot = Matrix::hstack(d0n * d1m, &[&r3a, &r3b]).unwrap();
    let sys = Matrix::vstack(d0n * d0m + d1n * d1m, &[&top, &mid, &bot]).unwrap();
    sys.cols() - rank(f, &sys)
}

/// Ext via an explicit coboundary span: images of all unit pairs `(f0, f1)`
/// under `(f0, f1) -> (f0 M0 - N0 f0, f1 M1 - N1 f1, f0 hM - hN f1)`.
fn ext_oracle(a: &AModule<Q>, b: &AModule<Q>) -> usize {
    let f = Rationals;
    let (d0m, d1m) = a.dims();
    let (d0n, d1n) = b.dims();
    let mut images: Vec<Vec<Q>> = Vec::new();
    let flat = |x: &Matrix<Q>| x.entries().to_vec();
    for v in 0..2 {
        let (r, c) = if v == 0 { (d0n, d0m) } else { (d1n, d1m) };
        for k in 0..r * c {
            let unit = Matrix::from_fn(r, c, |i, j| if i * c + j == k { f.one() } else { f.zero() });
            let (f0, f1) = if v == 0 { (unit, Matrix::zeros(&f, d1n, d1m)) } else { (Matrix::zeros(&f, d0n, d0m), unit) };
            let z0 = f0.mul(&f, a.m0()).unwrap().sub(&f, &b.m0().mul(&f, &f0).unwrap()).unwrap();
            let z1 = f1.mul(&f, a.m1()).unwrap().sub(&f, &b.m1().mul(&f, &f1).unwrap()).unwrap();
            let w = f0.mul(&f, a.h()).unwrap().sub(&f, &b.h().mul(&f, &f1).unwrap()).unwrap();
            images.push([flat(&z0), flat(&z1), flat(&w)].concat());
        }
    }
    let width = d0n * d0m + d1n * d1m + d0n * d1m;
    let b_rank = rank(&f, &Matrix::from_rows(width, images).unwrap());
    let sys = cocycle_oracle(a, b);
    let z_dim = nullspace_basis(&f, &sys).len();
    z_dim - b_rank
}

/// Cocycle conditions assembled with Kronecker products.
fn cocycle_oracle(a: &AModule<Q>, b: &AModule<Q>) -> Matrix<Q> {
    let f = Rationals;
    let m = a.m();
    let (d0m, d1m) = a.dims();
    let (d0n, d1n) = b.dims();
    let id = |n| Matrix::identity(&f, n);
    let z = |r, c| Matrix::zeros(&f, r, c);
    let sum_powers = |n: &Matrix<Q>, mm: &Matrix<Q>| {
        let mut acc = z(n.rows() * mm.rows(), n.rows() * mm.rows());
        for i in 0..m {
            let t = kron(&f, &n.pow(&f, i).unwrap(), &mm.pow(&f, m - 1 - i).unwrap());
            acc = acc.add(&f, &t).unwrap();
        }
        acc
    };
    let c0 = sum_powers(b.m0(), a.m0());
    let c1 = sum_powers(b.m1(), a.m1());
    let (n0, n1, nw) = (d0n * d0m, d1n * d1m, d0n * d1m);
    let row0 = Matrix::hstack(n0, &[&c0, &z(n0, n1), &z(n0, nw)]).unwrap();
    let row1 = Matrix::hstack(n1, &[&z(n1, n0), &c1, &z(n1, nw)]).unwrap();
    // N0 w + z0 hM - w M1 - hN z1
    let wz = kron(&f, b.m0(), &id(d1m)).sub(&f, &kron(&f, &id(d0n), a.m1())).unwrap();
    let row2 = Matrix::hstack(
        nw,
        &[&kron(&f, &id(d0n), a.h()), &kron(&f, b.h(), &id(d1m)).neg(&f), &wz],
    )
    .unwrap();
    Matrix::vstack(n0 + n1 + nw, &[&row0, &row1, &row2]).unwrap()
}

fn small_pairs(m: usize, dmax: usize) -> Vec<PartitionPair> {
    let mut out = Vec::new();
    for d0 in 0..=dmax {
        for d1 in 0..=dmax {
            for p in enumerate_partitions(d0, m) {
                for q in enumerate_partitions(d1, m) {
                    out.push(PartitionPair { p: p.clone(), q });
                }
            }
        }
    }
    out
}

#[test]
fn hom_matches_kronecker_oracle() {
    let q = Rationals;
    let pairs = small_pairs(3, 3);
    let modules: Vec<_> = pairs.iter().map(|s| build_canonical_module(&q, &s.p, &s.q).unwrap()).collect();
    for (k, a) in modules.iter().enumerate().step_by(3) {
        for b in modules.iter().skip(k % 5).step_by(4) {
            assert_eq!(hom_dim(&q, a, b).unwrap(), hom_oracle(&q, a, b));
            assert_eq!(hom_basis(&q, a, b).unwrap().dim(), hom_dim(&q, a, b).unwrap());
        }
    }
}

#[test]
fn hom_over_prime_field_matches_oracle() {
    let f = PrimeField::default();
    let a = canon(&f, &[3, 1], &[2], 3);
    let b = canon(&f, &[2, 2], &[3, 1], 3);
    assert_eq!(hom_dim(&f, &a, &b).unwrap(), hom_oracle(&f, &a, &b));
    assert_eq!(hom_dim(&f, &b, &a).unwrap(), hom_oracle(&f, &b, &a));
}

#[test]
fn lambda_hom_matches_formula() {
    // with d1 = 0 the hom space is the Hom between the K[X]/(X^m)-modules
    let q = Rationals;
    for m in 1..=3 {
        for d in 0..=4 {
            for p in enumerate_partitions(d, m) {
                for r in enumerate_partitions(4 - d.min(4), m) {
                    let a = build_canonical_module(&q, &p, &Partition::empty(m)).unwrap();
                    let b = build_canonical_module(&q, &r, &Partition::empty(m)).unwrap();
                    assert_eq!(hom_dim(&q, &a, &b).unwrap(), hom_dim_lambda(&p, &r));
                }
            }
        }
    }
}

#[test]
fn ext_matches_coboundary_oracle() {
    let q = Rationals;
    let pairs = small_pairs(2, 2);
    let modules: Vec<_> = pairs.iter().map(|s| build_canonical_module(&q, &s.p, &s.q).unwrap()).collect();
    for a in &modules {
        for b in &modules {
            assert_eq!(ext1_dim(&q, a, b).unwrap(), ext_oracle(a, b), "{a:?} {b:?}");
        }
    }
    let a = canon(&q, &[3, 1], &[2], 3);
    let b = canon(&q, &[1], &[3, 2], 3);
    assert_eq!(ext1_dim(&q, &a, &b).unwrap(), ext_oracle(&a, &b));
    assert_eq!(ext1_dim(&q, &b, &a).unwrap(), ext_oracle(&b, &a));
}

#[test]
fn worked_hom_and_ext_values() {
    let q = Rationals;
    let one = canon(&q, &[1], &[1], 2);
    assert_eq!(hom_dim(&q, &one, &one).unwrap(), 1);
    assert_eq!(ext1_dim(&q, &one, &one).unwrap(), 1);
    assert_eq!(end_dim(&q, &canon(&q, &[2], &[1], 2)).unwrap(), 2);
    let proj = canon(&q, &[2], &[], 2);
    for s in small_pairs(2, 3) {
        let n = build_canonical_module(&q, &s.p, &s.q).unwrap();
        assert_eq!(ext1_dim(&q, &proj, &n).unwrap(), 0, "({s})");
    }
}

#[test]
fn ext_and_hom_are_additive() {
    let q = Rationals;
    let m = canon(&q, &[2], &[1], 3);
    let n = canon(&q, &[1], &[3], 3);
    let mn = direct_sum(&q, &m, &n).unwrap();
    assert_eq!(
        ext1_dim(&q, &m, &mn).unwrap(),
        ext1_dim(&q, &m, &m).unwrap() + ext1_dim(&q, &m, &n).unwrap()
    );
    let t = canon(&q, &[3, 1], &[2], 3);
    assert_eq!(hom_dim(&q, &t, &mn).unwrap(), hom_dim(&q, &t, &m).unwrap() + hom_dim(&q, &t, &n).unwrap());
}
