//! Homomorphisms `U_(q) -> U_(p)` between indecomposable `K[X]/(X^m)`-modules,
//! represented as multiplication by a polynomial.
//!
//! `U_(p)` is identified with `K[X]/(X^p)`, the i-th basis vector being
//! `X^(i-1)`. A polynomial `phi` defines a map `U_(q) -> U_(p)` exactly when
//! `X^(p-q)` divides it (no condition when `q >= p`).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyHom<E> {
    source: usize,
    target: usize,
    /// Coefficients in increasing degree, reduced modulo `X^target`, without
    /// trailing zeros.
    poly: Vec<E>,
}

impl<E: Clone + PartialEq> PolyHom<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, source: usize, target: usize, mut poly: Vec<E>) -> Result<Self> {
        poly.truncate(target);
        while poly.last().is_some_and(|c| f.is_zero(c)) {
            poly.pop();
        }
        let shift = target.saturating_sub(source);
        if poly.iter().take(shift).any(|c| !f.is_zero(c)) {
            return Err(Error::ShapeMismatch(format!(
                "X^{shift} must divide a map U_({source}) -> U_({target})"
            )));
        }
        Ok(Self { source, target, poly })
    }

    /// Multiplication by `X^k`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, source: usize, target: usize, k: usize) -> Result<Self> {
        let mut poly = vec![f.zero(); k + 1];
        poly[k] = f.one();
        Self::new(f, source, target, poly)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn coefficients(&self) -> &[E] {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    /// The composite `self o other`, i.e. polynomial product truncated at
    /// `X^target`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.source != other.target {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose U_({}) -> U_({}) after U_({}) -> U_({})",
                self.source, self.target, other.source, other.target
            )));
        }
        let len = (self.poly.len() + other.poly.len()).saturating_sub(1).min(self.target);
        let mut prod = vec![f.zero(); len];
        for (i, a) in self.poly.iter().enumerate() {
            for (j, b) in other.poly.iter().enumerate() {
                if i + j < len {
                    prod[i + j] = f.add(&prod[i + j], &f.mul(a, b));
                }
            }
        }
        Self::new(f, other.source, self.target, prod)
    }

    /// The `K`-dual `U_(p) -> U_(q)`, represented by `X^(q-p) * phi`.
    pub fn dual<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let (q, p) = (self.source, self.target);
        let poly = if q >= p {
            let mut shifted = vec![f.zero(); q - p];
            shifted.extend(self.poly.iter().cloned());
            shifted
        } else {
            // X^(p-q) divides phi, so this division is exact
            self.poly.iter().skip(p - q).cloned().collect()
        };
        Self::new(f, p, q, poly).expect("dual of a homomorphism is a homomorphism")
    }

    /// The `target x source` matrix in the monomial bases.
    pub fn matrix<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let mut out = Matrix::zeros(f, self.target, self.source);
        for col in 0..self.source {
            for (i, c) in self.poly.iter().enumerate() {
                if col + i < self.target {
                    out.set(col + i, col, c.clone());
                }
            }
        }
        out
    }

    /// Nonzero constant term.
    pub fn is_epi<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.source >= self.target && (self.target == 0 || self.poly.first().is_some_and(|c| !f.is_zero(c)))
    }

    /// `phi / X^(p-q)` has nonzero constant term.
    pub fn is_mono<F: Field<Elem = E>>(&self, f: &F) -> bool {
        if self.source > self.target {
            return false;
        }
        self.source == 0
            || self
                .poly
                .get(self.target - self.source)
                .is_some_and(|c| !f.is_zero(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::linalg::rank;

    fn ph(source: usize, target: usize, coeffs: &[i64]) -> PolyHom<num_rational::BigRational> {
        let q = Rationals;
        PolyHom::new(&q, source, target, coeffs.iter().map(|&c| q.from_i64(c)).collect()).unwrap()
    }

    #[test]
    fn composition_examples() {
        let q = Rationals;
        let one = ph(3, 3, &[1]);
        assert_eq!(one.compose(&q, &one).unwrap(), one);
        let x = ph(3, 3, &[0, 1]);
        assert_eq!(x.compose(&q, &x).unwrap(), ph(3, 3, &[0, 0, 1]));
        let x2 = ph(3, 2, &[0, 0, 1]);
        assert!(x2.is_zero());
        assert!(ph(3, 2, &[1]).compose(&q, &ph(3, 2, &[1])).is_err());
    }

    #[test]
    fn divisibility_is_enforced() {
        let q = Rationals;
        assert!(PolyHom::new(&q, 1, 3, vec![q.one()]).is_err());
        assert!(PolyHom::monomial(&q, 1, 3, 2).is_ok());
    }

    #[test]
    fn dual_examples() {
        let q = Rationals;
        let id = ph(4, 4, &[1]);
        assert_eq!(id.dual(&q), id);
        // 1 : U_(5) -> U_(2) dualises to X^3 : U_(2) -> U_(5)
        assert_eq!(ph(5, 2, &[1]).dual(&q), ph(2, 5, &[0, 0, 0, 1]));
        let f = ph(2, 4, &[0, 0, 3, 1]);
        assert_eq!(f.dual(&q).dual(&q), f);
    }

    #[test]
    fn matrix_examples() {
        let q = Rationals;
        assert_eq!(ph(2, 2, &[1]).matrix(&q), Matrix::identity(&q, 2));
        assert_eq!(ph(2, 2, &[0, 1]).matrix(&q), Matrix::from_i64(&q, 2, 2, &[0, 0, 1, 0]).unwrap());
        assert_eq!(ph(1, 2, &[0, 1]).matrix(&q), Matrix::from_i64(&q, 2, 1, &[0, 1]).unwrap());
    }

    #[test]
    fn mono_epi_match_rank() {
        let q = Rationals;
        for p in 1usize..=4 {
            for s in 1..=4 {
                let shift = p.saturating_sub(s);
                for k in shift..p {
                    for lead in [1, 2] {
                        let mut coeffs = vec![0; k];
                        coeffs.push(lead);
                        coeffs.push(5);
                        let f = ph(s, p, &coeffs);
                        let r = rank(&q, &f.matrix(&q));
                        assert_eq!(f.is_epi(&q), r == p, "{f:?}");
                        assert_eq!(f.is_mono(&q), r == s, "{f:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_matrix_is_reversed_transpose() {
        let q = Rationals;
        let reversal = |n: usize| Matrix::from_fn(n, n, |r, c| if r + c + 1 == n { q.one() } else { q.zero() });
        for p in 1usize..=4 {
            for s in 1..=4 {
                for k in p.saturating_sub(s)..p {
                    let mut coeffs = vec![0; k];
                    coeffs.extend([2, -1, 3]);
                    let f = ph(s, p, &coeffs);
                    let expected = reversal(s)
                        .mul(&q, &f.matrix(&q).transpose())
                        .unwrap()
                        .mul(&q, &reversal(p))
                        .unwrap();
                    assert_eq!(f.dual(&q).matrix(&q), expected);
                }
            }
        }
    }

    #[test]
    fn composition_matches_matrix_product() {
        let q = Rationals;
        let f = ph(3, 4, &[0, 1, 2]);
        let g = ph(2, 3, &[0, 3]);
        let fg = f.compose(&q, &g).unwrap();
        assert_eq!(fg.matrix(&q), f.matrix(&q).mul(&q, &g.matrix(&q)).unwrap());
    }
}
