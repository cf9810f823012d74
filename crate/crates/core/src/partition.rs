//! Partitions with parts bounded by `m`, which index the isomorphism classes
//! of modules over `K[X]/(X^m)`, and the Jordan matrices realising them.

use std::cmp::{min, Ordering};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::matrix::Matrix;

/// A weakly decreasing sequence of positive parts, each at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    bound: usize,
}

impl Partition {
    /// Validates and builds a partition. Trailing zero parts are dropped, so
    /// `(2, 0)` is the partition `(2)`.
    pub fn new(mut parts: Vec<usize>, bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidPartition("bound m must be at least 1".into()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        if let Some(&first) = parts.first() {
            if first > bound {
                return Err(Error::InvalidPartition(format!(
                    "part {first} exceeds the bound {bound}"
                )));
            }
        }
        Ok(Self { parts, bound })
    }

    pub fn empty(bound: usize) -> Self {
        Self {
            parts: Vec::new(),
            bound,
        }
    }

    /// Parses `"3,2,2"`; the empty string is the empty partition.
    pub fn parse(text: &str, bound: usize) -> Result<Self> {
        Self::parse_at(text, bound, 0)
    }

    pub(crate) fn parse_at(text: &str, bound: usize, offset: usize) -> Result<Self> {
        if text.trim().is_empty() {
            return Self::new(Vec::new(), bound);
        }
        let mut parts = Vec::new();
        let mut pos = offset;
        for token in text.split(',') {
            let trimmed = token.trim();
            let lead = token.len() - token.trim_start().len();
            let value: usize = trimmed.parse().map_err(|_| Error::Parse {
                position: pos + lead,
                message: format!("expected a non-negative integer, found `{trimmed}`"),
            })?;
            parts.push(value);
            pos += token.len() + 1;
        }
        Self::new(parts, bound).map_err(|e| Error::Parse {
            position: offset,
            message: e.to_string(),
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The length `l(p)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// One-based part access with the sentinels `p_0 = m` and `p_j = 0` for
    /// `j > l(p)`.
    pub fn part(&self, j: usize) -> usize {
        match j {
            0 => self.bound,
            j => self.parts.get(j - 1).copied().unwrap_or(0),
        }
    }

    /// Same parts under a different bound.
    pub fn with_bound(&self, bound: usize) -> Result<Self> {
        Self::new(self.parts.clone(), bound)
    }

    /// True iff all prefix sums of `self` are at most those of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::UnequalWeight(self.clone(), other.clone()));
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for j in 1..=n {
            a += self.part(j);
            b += other.part(j);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiset union of parts, sorted weakly decreasing.
    pub fn union(&self, other: &Partition) -> Result<Partition> {
        if self.bound != other.bound {
            return Err(Error::InvalidPartition(format!(
                "union of partitions with bounds {} and {}",
                self.bound, other.bound
            )));
        }
        let mut parts: Vec<usize> = self.parts.iter().chain(&other.parts).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            parts,
            bound: self.bound,
        })
    }

    /// The block-diagonal matrix of lower Jordan blocks `J_{p_1}, J_{p_2}, ...`
    /// (ones directly below the diagonal).
    pub fn jordan_matrix<F: Field>(&self, f: &F) -> Matrix<F::Elem> {
        let d = self.weight();
        let mut out = Matrix::zeros(f, d, d);
        let mut start = 0;
        for &p in &self.parts {
            for i in 1..p {
                out.set(start + i, start + i - 1, f.one());
            }
            start += p;
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on parts, then by bound. Not the dominance order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts
            .cmp(&other.parts)
            .then(self.bound.cmp(&other.bound))
    }
}

/// All partitions of `d` with parts at most `m`, in reverse lexicographic
/// order (so the maximal partition comes first).
pub fn enumerate_partitions(d: usize, m: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, prefix: &mut Vec<usize>, m: usize, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
                bound: m,
            });
            return;
        }
        for part in (1..=min(cap, rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    go(d, m, &mut Vec::new(), m, &mut out);
    out
}

/// The dominance-maximal partition `(m, ..., m, r)` of `d`.
pub fn maximal_partition(d: usize, m: usize) -> Partition {
    let mut parts = vec![m; d / m];
    if !d.is_multiple_of(m) {
        parts.push(d % m);
    }
    Partition { parts, bound: m }
}

/// `dim Hom(U_q, U_p) = sum_{i,j} min(p_i, q_j)`.
pub fn hom_dim_lambda(q: &Partition, p: &Partition) -> usize {
    q.parts
        .iter()
        .flat_map(|&qj| p.parts.iter().map(move |&pi| min(pi, qj)))
        .sum()
}

/// Recovers the Jordan type of an `m`-nilpotent matrix from the ranks of its
/// powers: `rank(a^{k-1}) - rank(a^k)` counts the blocks of size at least `k`.
pub fn jordan_type<F: Field>(f: &F, a: &Matrix<F::Elem>, m: usize) -> Result<Partition> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "Jordan type of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if !linalg::is_nilpotent_of_order(f, a, m)? {
        return Err(Error::NotNilpotent { m });
    }
    let mut ranks = vec![a.rows()];
    let mut power = Matrix::identity(f, a.rows());
    for _ in 0..m {
        power = power.mul(f, a)?;
        ranks.push(linalg::rank(f, &power));
    }
    // at_least[k] = number of blocks of size >= k, for k = 1..=m
    let at_least: Vec<usize> = (1..=m).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for size in (1..=m).rev() {
        let bigger = if size < m { at_least[size] } else { 0 };
        parts.extend(std::iter::repeat_n(size, at_least[size - 1] - bigger));
    }
    Partition::new(parts, m)
}
