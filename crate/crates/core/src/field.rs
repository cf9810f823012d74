//! Exact scalar fields.
//!
//! A [`Field`] is a value describing the arithmetic, in the style of a ring
//! object: elements are plain data and every operation goes through the field.
//! Two backends exist: [`Rationals`] (exact `BigRational`, the default) and
//! [`PrimeField`] (residues modulo an odd prime below 2^63, used for sampling).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::echelon::{self, Echelon};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// The default sampling prime, 2^61 - 1.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

/// Half-width of the integer box used for random rational scalars.
const RATIONAL_SAMPLE_RADIUS: i64 = 1000;

/// Arithmetic of an exact field.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A random element; uniform for prime fields, a small integer for `Q`.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Reduced row echelon form with first-nonzero pivoting.
    fn row_reduce(&self, a: &Matrix<Self::Elem>) -> Echelon<Self::Elem> {
        echelon::gauss_jordan(self, a)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Serializable description of the active field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Prime { prime: u64 },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::Prime { prime } => write!(f, "prime({prime})"),
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_RADIUS..=RATIONAL_SAMPLE_RADIUS))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse {
            position: 0,
            message: format!("invalid rational `{s}`"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }

    fn row_reduce(&self, a: &Matrix<BigRational>) -> Echelon<BigRational> {
        echelon::fraction_free_rref(a)
    }
}

/// Residues modulo an odd prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Checks that `p` is an odd prime below 2^63.
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 63).contains(&p) || !is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into the field.
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(pow_mod(*a, self.p - 2, self.p))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { prime: self.p }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let v: u64 = s.trim().parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("invalid residue `{s}`"),
        })?;
        if v >= self.p {
            return Err(Error::Parse {
                position: 0,
                message: format!("residue {v} not reduced modulo {}", self.p),
            });
        }
        Ok(v)
    }
}

/// Maps an integer-valued rational into a prime field, if its denominator is
/// invertible there.
pub fn rational_to_prime(f: &PrimeField, a: &BigRational) -> Option<u64> {
    let p = BigInt::from(f.prime());
    let reduce = |x: &BigInt| -> u64 {
        let r = ((x % &p) + &p) % &p;
        r.to_u64().expect("residue fits in u64")
    };
    let den = reduce(a.denom());
    let inv = f.inv(&den)?;
    let num = if a.numer().is_negative() {
        f.neg(&reduce(&-a.numer()))
    } else {
        reduce(a.numer())
    };
    Some(f.mul(&num, &inv))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve primes as witnesses cover all
/// of `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(DEFAULT_PRIME - 2));
        let small: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
    }

    #[test]
    fn prime_field_rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn inverses_and_negation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fp = PrimeField::default();
        for _ in 0..200 {
            let a = fp.random(&mut rng);
            assert!(fp.is_zero(&fp.add(&a, &fp.neg(&a))));
            if let Some(b) = fp.inv(&a) {
                assert_eq!(fp.mul(&a, &b), 1);
            }
        }
        let q = Rationals;
        let a = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&a), "-3/2");
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let fp = PrimeField::new(7).unwrap();
        let half = Rationals.parse("-1/2").unwrap();
        // -1/2 = 3 mod 7, since 2 * 3 = 6 = -1
        assert_eq!(rational_to_prime(&fp, &half), Some(3));
        let seventh = Rationals.parse("1/7").unwrap();
        assert_eq!(rational_to_prime(&fp, &seventh), None);
    }
}
