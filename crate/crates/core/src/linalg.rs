//! Rank, kernels and inverses over an exact field.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    f.row_reduce(a).rank()
}

/// Basis of `{v : a v = 0}` read off the reduced echelon form: one vector per
/// free column, with a 1 in that column.
pub fn nullspace_basis<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let n = a.cols();
    let ech = f.row_reduce(a);
    let mut is_pivot = vec![false; n];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg(ech.rref.get(r, free));
            }
            v
        })
        .collect()
}

pub fn invert<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "inverse of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let aug = Matrix::hstack(n, &[a, &Matrix::identity(f, n)])?;
    let ech = f.row_reduce(&aug);
    if !ech.pivots.iter().copied().eq(0..n) {
        return Err(Error::SingularMatrix);
    }
    Ok(ech.rref.submatrix(0, n, n, 2 * n))
}

pub fn is_invertible<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.is_square() && rank(f, a) == a.rows()
}

/// True iff `a^m = 0`.
pub fn is_nilpotent_of_order<F: Field>(f: &F, a: &Matrix<F::Elem>, m: usize) -> Result<bool> {
    Ok(a.pow(f, m)?.is_zero(f))
}

/// Matrix-vector product, used to check kernel vectors.
pub fn apply<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}

/// Random square matrix that is invertible, by rejection.
pub fn random_invertible<F: Field>(f: &F, n: usize, rng: &mut dyn rand::RngCore) -> Matrix<F::Elem> {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| f.random(rng));
        if is_invertible(f, &g) {
            return g;
        }
    }
}

/// Linear combination `sum coeffs[i] * vectors[i]`.
pub fn combine<F: Field>(f: &F, coeffs: &[F::Elem], vectors: &[Vec<F::Elem>], len: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = f.add(o, &f.mul(c, x));
        }
    }
    out
}
