//! Pairs of partitions: interlacing types, indecomposability and the
//! canonical decomposition.
//!
//! The canonical decomposition matches the parts of `p` ("upper row") with
//! the parts of `q` ("lower row"):
//!
//! * `u` joins equal entries, greedily (each `q_j` to the leftmost free
//!   `p_i = q_j`);
//! * `v_plus` joins, for increasing `j`, an unmatched `q_j` to the nearest free
//!   upper entry `p_i > q_j`;
//! * `v_minus` joins, for decreasing `j`, an unmatched `q_j` to the nearest upper
//!   entry `p_i < q_j` not already used by `v_minus`.
//!
//! Connected components of the resulting graph are strictly interlacing
//! chains, the indecomposable summands.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionPair {
    pub p: Partition,
    pub q: Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairType {
    MonoOnly,
    EpiOnly,
    Both,
    Neither,
}

impl PairType {
    pub fn is_mono(self) -> bool {
        matches!(self, PairType::MonoOnly | PairType::Both)
    }

    pub fn is_epi(self) -> bool {
        matches!(self, PairType::EpiOnly | PairType::Both)
    }
}

impl PartitionPair {
    pub fn new(p: Partition, q: Partition) -> Result<Self> {
        if p.bound() != q.bound() {
            return Err(Error::InvalidPartition(format!(
                "pair components have bounds {} and {}",
                p.bound(),
                q.bound()
            )));
        }
        Ok(Self { p, q })
    }

    /// Convenience constructor from raw parts.
    pub fn from_parts(p: &[usize], q: &[usize], m: usize) -> Result<Self> {
        Self::new(Partition::new(p.to_vec(), m)?, Partition::new(q.to_vec(), m)?)
    }

    pub fn empty(m: usize) -> Self {
        Self {
            p: Partition::empty(m),
            q: Partition::empty(m),
        }
    }

    /// Parses `"p1,p2,...|q1,q2,..."`.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let Some(bar) = text.find('|') else {
            return Err(Error::Parse {
                position: text.len(),
                message: "expected `|` separating the two partitions".into(),
            });
        };
        let p = Partition::parse_at(&text[..bar], m, 0)?;
        let q = Partition::parse_at(&text[bar + 1..], m, bar + 1)?;
        Self::new(p, q)
    }

    pub fn bound(&self) -> usize {
        self.p.bound()
    }

    /// `(|p|, |q|)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.p.weight(), self.q.weight())
    }

    /// The pair with components swapped, matching the dual module.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    pub fn union(&self, other: &PartitionPair) -> Result<PartitionPair> {
        Ok(Self {
            p: self.p.union(&other.p)?,
            q: self.q.union(&other.q)?,
        })
    }

    pub fn classify(&self) -> PairType {
        classify_pair(&self.p, &self.q)
    }

    pub fn is_weakly_indecomposable(&self) -> bool {
        self.classify() != PairType::Neither
    }

    pub fn is_indecomposable(&self) -> bool {
        is_indecomposable_pair(&self.p, &self.q)
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.p, self.q)
    }
}

/// The sequence `a_1, b_1, a_2, b_2, ...`, extended by zeros up to the longer
/// of the two.
fn interlace(a: &Partition, b: &Partition) -> Vec<usize> {
    let n = a.len().max(b.len());
    (1..=n).flat_map(|j| [a.part(j), b.part(j)]).collect()
}

fn weakly_decreasing(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] >= w[1])
}

pub fn classify_pair(p: &Partition, q: &Partition) -> PairType {
    let mono = weakly_decreasing(&interlace(p, q));
    let epi = weakly_decreasing(&interlace(q, p));
    match (mono, epi) {
        (true, true) => PairType::Both,
        (true, false) => PairType::MonoOnly,
        (false, true) => PairType::EpiOnly,
        (false, false) => PairType::Neither,
    }
}

/// `((n),(n))`, or a strictly interlacing chain `p_1 > q_1 > p_2 > ...`
/// (or starting with `q_1`) whose lengths differ by at most one in the
/// right direction.
pub fn is_indecomposable_pair(p: &Partition, q: &Partition) -> bool {
    if p.len() == 1 && q.len() == 1 && p.part(1) == q.part(1) {
        return true;
    }
    let chain = |a: &Partition, b: &Partition| -> bool {
        if a.is_empty() || !(a.len() == b.len() || a.len() == b.len() + 1) {
            return false;
        }
        let seq: Vec<usize> = (1..=a.len())
            .flat_map(|j| [a.part(j), b.part(j)])
            .take(a.len() + b.len())
            .collect();
        seq.windows(2).all(|w| w[0] > w[1])
    };
    chain(p, q) || chain(q, p)
}

/// Matching data behind a canonical decomposition; indices are one-based,
/// stored as `(j, i)` meaning lower entry `q_j` joined to upper entry `p_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub u: Vec<(usize, usize)>,
    pub v_plus: Vec<(usize, usize)>,
    pub v_minus: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    pub pair: PartitionPair,
    pub summands: Vec<PartitionPair>,
    pub matching: Matching,
}

impl CanonicalDecomposition {
    /// Union of all summands.
    pub fn reassemble(&self) -> PartitionPair {
        self.summands
            .iter()
            .fold(PartitionPair::empty(self.pair.bound()), |acc, s| {
                acc.union(s).expect("summands share the bound")
            })
    }

    /// Graphviz rendering of the matching: upper row `p`, lower row `q`.
    pub fn to_dot(&self) -> String {
        let (p, q) = (&self.pair.p, &self.pair.q);
        let mut out = String::from("graph decomposition {\n  node [shape=plaintext];\n");
        let _ = writeln!(out, "  {{ rank=same; {} }}", node_list("p", p.len()));
        let _ = writeln!(out, "  {{ rank=same; {} }}", node_list("q", q.len()));
        for i in 1..=p.len() {
            let _ = writeln!(out, "  p{i} [label=\"{}\"];", p.part(i));
        }
        for j in 1..=q.len() {
            let _ = writeln!(out, "  q{j} [label=\"{}\"];", q.part(j));
        }
        let edges = [
            (&self.matching.u, "u", "solid"),
            (&self.matching.v_plus, "v+", "dashed"),
            (&self.matching.v_minus, "v-", "dotted"),
        ];
        for (list, label, style) in edges {
            for (j, i) in list {
                let _ = writeln!(out, "  p{i} -- q{j} [label=\"{label}\", style={style}];");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn node_list(prefix: &str, n: usize) -> String {
    (1..=n).map(|k| format!("{prefix}{k};")).collect::<Vec<_>>().join(" ")
}

/// Canonical decomposition with the greedy choice of `u`.
pub fn canonical_decomposition(p: &Partition, q: &Partition) -> Result<CanonicalDecomposition> {
    let mut taken = vec![false; p.len() + 1];
    let mut u = Vec::new();
    for j in 1..=q.len() {
        if let Some(i) = (1..=p.len()).find(|&i| !taken[i] && p.part(i) == q.part(j)) {
            taken[i] = true;
            u.push((j, i));
        }
    }
    decompose_with_matching(p, q, &u)
}

/// Canonical decomposition for a caller-chosen equal-entry matching `u`
/// (pairs `(j, i)` with `q_j = p_i`), which must be maximal.
pub fn decompose_with_matching(
    p: &Partition,
    q: &Partition,
    u: &[(usize, usize)],
) -> Result<CanonicalDecomposition> {
    let pair = PartitionPair::new(p.clone(), q.clone())?;
    let (lp, lq) = (p.len(), q.len());

    let mut in_i0 = vec![false; lp + 1];
    let mut in_j0 = vec![false; lq + 1];
    for &(j, i) in u {
        if i == 0 || i > lp || j == 0 || j > lq || in_i0[i] || in_j0[j] || p.part(i) != q.part(j) {
            return Err(Error::HypothesisViolated(format!(
                "({j}, {i}) is not an admissible equal-entry match"
            )));
        }
        in_i0[i] = true;
        in_j0[j] = true;
    }
    let free_p: Vec<usize> = (1..=lp).filter(|&i| !in_i0[i]).map(|i| p.part(i)).collect();
    if (1..=lq).any(|j| !in_j0[j] && free_p.contains(&q.part(j))) {
        return Err(Error::HypothesisViolated("equal-entry matching is not maximal".into()));
    }

    // v_plus by increasing j: nearest free upper entry to the left.
    let mut v_plus: Vec<Option<usize>> = vec![None; lq + 1];
    let mut plus_used = vec![false; lp + 1];
    for j in (1..=lq).filter(|&j| !in_j0[j]) {
        let target = (1..=lp)
            .rev()
            .find(|&i| !in_i0[i] && !plus_used[i] && p.part(i) > q.part(j));
        if let Some(i) = target {
            plus_used[i] = true;
            v_plus[j] = Some(i);
        }
    }
    // v_minus by decreasing j: nearest upper entry to the right.
    let mut v_minus: Vec<Option<usize>> = vec![None; lq + 1];
    let mut minus_used = vec![false; lp + 1];
    for j in (1..=lq).rev().filter(|&j| !in_j0[j]) {
        let target = (1..=lp).find(|&i| !in_i0[i] && !minus_used[i] && p.part(i) < q.part(j));
        if let Some(i) = target {
            minus_used[i] = true;
            v_minus[j] = Some(i);
        }
    }
    let mut plus_inverse: Vec<Option<usize>> = vec![None; lp + 1];
    for j in 1..=lq {
        if let Some(i) = v_plus[j] {
            plus_inverse[i] = Some(j);
        }
    }

    let m = p.bound();
    let mut summands = Vec::new();
    let mut seen_p = in_i0.clone();
    let mut seen_q = in_j0.clone();
    for &(j, _) in u {
        summands.push(single(q.part(j), q.part(j), m));
    }
    // Chains opening with an upper entry that has no v_minus edge.
    for start in (1..=lp).filter(|&i| !in_i0[i] && !minus_used[i]) {
        let (mut ps, mut qs) = (Vec::new(), Vec::new());
        let mut i = Some(start);
        while let Some(ci) = i {
            ps.push(p.part(ci));
            seen_p[ci] = true;
            let Some(j) = plus_inverse[ci] else { break };
            qs.push(q.part(j));
            seen_q[j] = true;
            i = v_minus[j];
        }
        summands.push(PartitionPair {
            p: Partition::new(ps, m)?,
            q: Partition::new(qs, m)?,
        });
    }
    // Chains opening with a lower entry that has no v_plus edge.
    for start in (1..=lq).filter(|&j| !in_j0[j] && v_plus[j].is_none()) {
        let (mut ps, mut qs) = (Vec::new(), Vec::new());
        let mut j = Some(start);
        while let Some(cj) = j {
            qs.push(q.part(cj));
            seen_q[cj] = true;
            let Some(i) = v_minus[cj] else { break };
            ps.push(p.part(i));
            seen_p[i] = true;
            j = plus_inverse[i];
        }
        summands.push(PartitionPair {
            p: Partition::new(ps, m)?,
            q: Partition::new(qs, m)?,
        });
    }
    debug_assert!(
        seen_p.iter().skip(1).all(|&s| s) && seen_q.iter().skip(1).all(|&s| s),
        "matching graph of {pair} has a cycle"
    );

    summands.sort_by_key(|s| Reverse((s.p.parts().to_vec(), s.q.parts().to_vec())));
    let collect = |v: &[Option<usize>]| -> Vec<(usize, usize)> {
        v.iter()
            .enumerate()
            .filter_map(|(j, i)| i.map(|i| (j, i)))
            .collect()
    };
    Ok(CanonicalDecomposition {
        matching: Matching {
            u: u.to_vec(),
            v_plus: collect(&v_plus),
            v_minus: collect(&v_minus),
        },
        pair,
        summands,
    })
}

fn single(a: usize, b: usize, m: usize) -> PartitionPair {
    PartitionPair {
        p: Partition::new(vec![a], m).expect("part within bound"),
        q: Partition::new(vec![b], m).expect("part within bound"),
    }
}

/// Multiset view of a list of summands, for order-free comparison.
pub fn summand_multiset(summands: &[PartitionPair]) -> BTreeMap<PartitionPair, usize> {
    let mut out = BTreeMap::new();
    for s in summands {
        *out.entry(s.clone()).or_insert(0) += 1;
    }
    out
}
