//! Fixtures shared by the benchmarks.

use birkhoff::{build_canonical_module, Field, Matrix, PartitionPair};

/// A dense singular integer matrix with a fixed pattern.
pub fn integer_matrix<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let data: Vec<i64> = (0..n * n)
        .map(|k| {
            let (r, c) = (k / n, k % n);
            // last row repeats the first, so the matrix is singular
            let r = if r + 1 == n { 0 } else { r };
            ((r * 7 + c * 13 + r * c) % 11) as i64 - 5
        })
        .collect();
    Matrix::from_i64(f, n, n, &data).expect("square data")
}

/// The worked decomposition input with bound 19.
pub fn golden_pair() -> PartitionPair {
    PartitionPair::from_parts(
        &[19, 18, 17, 16, 13, 13, 10, 10, 9, 6, 6, 2, 2, 1],
        &[19, 15, 14, 13, 13, 13, 12, 8, 4, 4, 3, 2],
        19,
    )
    .expect("valid pair")
}

pub fn canonical<F: Field>(f: &F, p: &[usize], q: &[usize], m: usize) -> birkhoff::AModule<F::Elem> {
    let s = PartitionPair::from_parts(p, q, m).expect("valid pair");
    build_canonical_module(f, &s.p, &s.q).expect("canonical module")
}
