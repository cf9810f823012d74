//! Row reduction kernels.
//!
//! Both kernels pivot on the first nonzero entry, scanning columns left to
//! right and rows top to bottom, so the reduced form is reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive};

use crate::field::Field;
use crate::matrix::Matrix;

/// A reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    /// Same shape as the input; rows past `pivots.len()` are zero.
    pub rref: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Plain Gauss-Jordan elimination with field division.
pub fn gauss_jordan<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let (nr, nc) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<F::Elem>> = (0..nr).map(|r| a.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(k) = (r..nr).find(|&k| !f.is_zero(&rows[k][c])) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        for e in rows[r].iter_mut().skip(c) {
            *e = f.mul(e, &inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..nc {
                if !f.is_zero(&pivot_row[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let data = rows.into_iter().flatten().collect();
    Echelon {
        rref: Matrix::new(nr, nc, data).expect("shape preserved"),
        pivots,
    }
}

/// Reduced row echelon form over `Q`, computed without fractions.
///
/// Each row is scaled to a primitive integer vector; eliminations are
/// integer cross-multiplications followed by division by the row content.
/// Runs in `i128` and restarts in `BigInt` on overflow. Only the final
/// normalisation by the pivot introduces denominators.
pub fn fraction_free_rref(a: &Matrix<BigRational>) -> Echelon<BigRational> {
    let big_rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|r| integer_row(a.row(r))).collect();
    let small_rows: Option<Vec<Vec<i128>>> = big_rows
        .iter()
        .map(|row| row.iter().map(|x| x.to_i128()).collect())
        .collect();
    let reduced = small_rows
        .and_then(|rows| integer_rref(rows, a.cols()))
        .map(|(rows, pivots)| {
            let rows = rows
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect();
            (rows, pivots)
        })
        .or_else(|| integer_rref(big_rows, a.cols()));
    let (rows, pivots) = reduced.expect("BigInt elimination cannot overflow");

    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for (r, row) in rows.into_iter().enumerate() {
        match pivots.get(r) {
            Some(&c) => {
                let lead = row[c].clone();
                data.extend(row.into_iter().map(|x| BigRational::new(x, lead.clone())));
            }
            None => data.extend(row.into_iter().map(BigRational::from_integer)),
        }
    }
    Echelon {
        rref: Matrix::new(a.rows(), a.cols(), data).expect("shape preserved"),
        pivots,
    }
}

/// Clears denominators of a rational row.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

trait ExactInt: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl ExactInt for i128 {}
impl ExactInt for BigInt {}

fn make_primitive<T: ExactInt>(row: &mut [T]) {
    let g = row.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = x.div_floor(&g);
    }
}

/// Integer Gauss-Jordan; `None` signals overflow of `T`.
fn integer_rref<T: ExactInt>(mut rows: Vec<Vec<T>>, ncols: usize) -> Option<(Vec<Vec<T>>, Vec<usize>)> {
    let nr = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nr {
            break;
        }
        let Some(k) = (r..nr).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        make_primitive(&mut rows[r]);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = rows[r].clone();
        let lead = pivot_row[c].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let g = lead.gcd(&row[c]);
            let a = lead.div_floor(&g);
            let b = row[c].div_floor(&g);
            for j in 0..ncols {
                let scaled = if a.is_one() {
                    row[j].clone()
                } else {
                    row[j].checked_mul(&a)?
                };
                row[j] = if pivot_row[j].is_zero() {
                    scaled
                } else {
                    scaled.checked_sub(&pivot_row[j].checked_mul(&b)?)?
                };
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    Some((rows, pivots))
}
