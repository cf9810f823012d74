//! Dense row-major matrices over an exact field.
//!
//! Zero-row and zero-column matrices are legal. A `d x 0` times `0 x e`
//! product is the `d x e` zero matrix.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<E> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(rows: usize, blocks: &[&Self]) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(Error::ShapeMismatch(format!(
                "hstack of a {}-row block into {rows} rows",
                b.rows
            )));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(cols: usize, blocks: &[&Self]) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(Error::ShapeMismatch(format!(
                "vstack of a {}-column block into {cols} columns",
                b.cols
            )));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Self { rows, cols, data })
    }

    /// Entrywise conversion, e.g. from integer data into a field.
    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
    }

    pub fn from_i64<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&v| f.from_i64(v)).collect())
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| f.add(a, b))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| f.sub(a, b))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|e| f.mul(e, s))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.map(|e| f.neg(e))
    }

    /// `self^k` for a square matrix; `k = 0` gives the identity.
    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = Self::identity(f, self.rows);
        for _ in 0..k {
            acc = acc.mul(f, self)?;
        }
        Ok(acc)
    }

    pub fn trace<F: Field<Elem = E>>(&self, f: &F) -> E {
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Block-diagonal assembly.
    pub fn block_diag<F: Field<Elem = E>>(f: &F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    fn zip(&self, rhs: &Self, mut op: impl FnMut(&E, &E) -> E) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "entrywise op on {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn empty_products_are_zero() {
        let q = Rationals;
        let a = Matrix::zeros(&q, 3, 0);
        let b = Matrix::zeros(&q, 0, 2);
        let c = a.mul(&q, &b).unwrap();
        assert_eq!((c.rows(), c.cols()), (3, 2));
        assert!(c.is_zero(&q));
    }

    #[test]
    fn product_and_power() {
        let f = PrimeField::default();
        let j = Matrix::from_i64(&f, 3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]).unwrap();
        let j2 = j.pow(&f, 2).unwrap();
        assert_eq!(j2, Matrix::from_i64(&f, 3, 3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]).unwrap());
        assert!(j.pow(&f, 3).unwrap().is_zero(&f));
        assert_eq!(j.pow(&f, 0).unwrap(), Matrix::identity(&f, 3));
    }

    #[test]
    fn stacking_and_blocks() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, 1, 2, &[1, 2]).unwrap();
        let b = Matrix::from_i64(&q, 1, 1, &[3]).unwrap();
        let h = Matrix::hstack(1, &[&a, &b]).unwrap();
        assert_eq!(h, Matrix::from_i64(&q, 1, 3, &[1, 2, 3]).unwrap());
        assert!(Matrix::vstack(2, &[&a, &b]).is_err());
        let d = Matrix::block_diag(&q, &[&a, &b]);
        assert_eq!(d, Matrix::from_i64(&q, 2, 3, &[1, 2, 0, 0, 0, 3]).unwrap());
        assert_eq!(d.transpose().transpose(), d);
        assert!(Matrix::new(2, 2, vec![q.one()]).is_err());
    }
}
