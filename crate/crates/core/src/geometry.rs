//! Dimensions of strata and orbits, degeneration moves between strata, and
//! the per-variety irreducibility certificate.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, PrimeField, Rationals, DEFAULT_PRIME};
use crate::linalg;
use crate::matrix::Matrix;
use crate::module::{
    build_canonical_module, direct_sum, dual, end_dim, ext1_dim, hom_dim, is_gorenstein_projective, isomorphism_search,
    sample_stratum, AModule, IsoSearch,
};
use crate::pairs::{PairType, PartitionPair};
use crate::polyhom::PolyHom;
use crate::partition::{enumerate_partitions, hom_dim_lambda, maximal_partition, Partition};

pub fn orbit_dim<F: Field>(f: &F, a: &AModule<F::Elem>) -> Result<usize> {
    let (d0, d1) = a.dims();
    Ok(d0 * d0 + d1 * d1 - end_dim(f, a)?)
}

pub fn stratum_dim(p: &Partition, q: &Partition) -> usize {
    let (d0, d1) = (p.weight(), q.weight());
    (d0 * d0 - hom_dim_lambda(p, p)) + (d1 * d1 - hom_dim_lambda(q, q)) + hom_dim_lambda(q, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub pair: PartitionPair,
    pub stratum_dim: usize,
    pub orbit_dim: usize,
    pub dense_in_stratum: bool,
    pub gorenstein_projective: bool,
}

pub fn check_dense_orbit_identity(p: &Partition, q: &Partition) -> Result<StratumReport> {
    let q_ = Rationals;
    let module = build_canonical_module(&q_, p, q)?;
    let stratum = stratum_dim(p, q);
    let orbit = orbit_dim(&q_, &module)?;
    Ok(StratumReport {
        pair: PartitionPair::new(p.clone(), q.clone())?,
        stratum_dim: stratum,
        orbit_dim: orbit,
        dense_in_stratum: orbit == stratum,
        gorenstein_projective: is_gorenstein_projective(&q_, &module),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Mechanism {
    DefInd,
    DefIndDual,
    DefStrata,
    DefStrataDual,
}

/// Rank data recorded when an exact sequence has been checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Dimension vectors of the three terms.
    pub dims: [(usize, usize); 3],
    /// Ranks of the left map at vertices 0 and 1.
    pub left_ranks: (usize, usize),
    /// Ranks of the right map at vertices 0 and 1.
    pub right_ranks: (usize, usize),
}

/// `S_from` lies in the closure of `S_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationEdge {
    pub from: PartitionPair,
    pub to: PartitionPair,
    pub mechanism: Mechanism,
    pub j1: usize,
    pub j2: usize,
    pub witness: Option<Witness>,
}

/// A short sequence `0 -> A -> B -> C -> 0` of module maps, each map given
/// by its two components.
#[derive(Clone, Debug)]
pub struct ExactSequence<E> {
    pub left: AModule<E>,
    pub middle: AModule<E>,
    pub right: AModule<E>,
    pub f: (Matrix<E>, Matrix<E>),
    pub g: (Matrix<E>, Matrix<E>),
}

fn is_hom<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>, map: &(Matrix<F::Elem>, Matrix<F::Elem>)) -> Result<bool> {
    let (f0, f1) = map;
    if (f0.cols(), f1.cols()) != a.dims() || (f0.rows(), f1.rows()) != b.dims() {
        return Ok(false);
    }
    Ok(f0.mul(f, a.m0())? == b.m0().mul(f, f0)?
        && f1.mul(f, a.m1())? == b.m1().mul(f, f1)?
        && f0.mul(f, a.h())? == b.h().mul(f, f1)?)
}

impl<E: Clone + PartialEq> ExactSequence<E> {
    /// Checks both maps are homomorphisms and the sequence is exact at every
    /// vertex: left injective, right surjective, composite zero, and ranks
    /// adding up to the middle dimension.
    pub fn verify<F: Field<Elem = E>>(&self, f: &F) -> Result<Witness> {
        let fail = |what: &str| Err(Error::ExactnessFailure(what.to_string()));
        if !is_hom(f, &self.left, &self.middle, &self.f)? {
            return fail("left map is not a homomorphism");
        }
        if !is_hom(f, &self.middle, &self.right, &self.g)? {
            return fail("right map is not a homomorphism");
        }
        let (a, b, c) = (self.left.dims(), self.middle.dims(), self.right.dims());
        let mut ranks = [(0, 0); 2];
        for (v, (fv, gv)) in [(&self.f.0, &self.g.0), (&self.f.1, &self.g.1)].into_iter().enumerate() {
            let (da, db, dc) = if v == 0 { (a.0, b.0, c.0) } else { (a.1, b.1, c.1) };
            let (rf, rg) = (linalg::rank(f, fv), linalg::rank(f, gv));
            if rf != da {
                return fail(&format!("left map not injective at vertex {v}"));
            }
            if rg != dc {
                return fail(&format!("right map not surjective at vertex {v}"));
            }
            if !gv.mul(f, fv)?.is_zero(f) {
                return fail(&format!("composite is nonzero at vertex {v}"));
            }
            if rf + rg != db {
                return fail(&format!("not exact in the middle at vertex {v}"));
            }
            ranks[v] = (rf, rg);
        }
        Ok(Witness {
            dims: [a, b, c],
            left_ranks: (ranks[0].0, ranks[1].0),
            right_ranks: (ranks[0].1, ranks[1].1),
        })
    }

    /// The `K`-dual sequence `0 -> DC -> DB -> DA -> 0`.
    pub fn dual(&self) -> Self {
        Self {
            left: dual(&self.right),
            middle: dual(&self.middle),
            right: dual(&self.left),
            f: (self.g.1.transpose(), self.g.0.transpose()),
            g: (self.f.1.transpose(), self.f.0.transpose()),
        }
    }
}

/// `q` with `q_{j1}` raised and `q_{j2}` lowered by one; indices one-based.
fn shifted(q: &Partition, j1: usize, j2: usize) -> Result<Partition> {
    let n = q.len().max(j2);
    let parts: Vec<usize> = (1..=n)
        .map(|j| {
            if j == j1 {
                q.part(j) + 1
            } else if j == j2 {
                q.part(j) - 1
            } else {
                q.part(j)
            }
        })
        .collect();
    Partition::new(parts, q.bound())
}

/// `q_{j1} < q_{j1-1}` and `q_{j2} > q_{j2+1}`, with `q_0 = m`.
fn has_corners(q: &Partition, j1: usize, j2: usize) -> bool {
    j1 >= 1 && q.part(j1) < q.part(j1 - 1) && q.part(j2) > q.part(j2 + 1)
}

fn violated(msg: String) -> Error {
    Error::HypothesisViolated(msg)
}

/// The exact sequence `0 -> M_{p,q} -> M_{p,q'} + N -> N -> 0` witnessing
/// `S_{p,q}` in the closure of `S_{p,q'}`.
pub fn def_ind_sequence<F: Field>(f: &F, p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<ExactSequence<F::Elem>> {
    let pair = PartitionPair::new(p.clone(), q.clone())?;
    let kind = pair.classify();
    if kind == PairType::Neither {
        return Err(violated(format!("({pair}) is not weakly indecomposable")));
    }
    if !(j1 < j2) || !has_corners(q, j1, j2) {
        return Err(violated(format!("({j1}, {j2}) are not corners of q = ({q})")));
    }
    let q2 = shifted(q, j1, j2)?;
    let target = PartitionPair::new(p.clone(), q2.clone())?;
    let kind2 = target.classify();
    if kind2 == PairType::Neither {
        return Err(violated(format!("({target}) is not weakly indecomposable")));
    }
    let mono = kind2.is_mono();
    let (i1, i2) = if mono { (j1 + 1, j2) } else { (j1, j2 - 1) };

    let src = build_canonical_module(f, p, q)?;
    let dst = build_canonical_module(f, p, &q2)?;
    let m = pair.bound();
    let off = |x: &Partition, k: usize| -> usize { x.parts().iter().take(k).sum() };
    let (u0, u1) = (off(p, i1 - 1), off(p, i2));
    let du = u1 - u0;
    let (d0, d1) = pair.dims();

    let ju = Partition::new(p.parts()[i1 - 1..i2].to_vec(), m)?.jordan_matrix(f);
    let n = AModule::new(f, m, ju.clone(), ju.clone(), Matrix::identity(f, du))?;

    // f1(0) = diag(Id, X Id_U, Id)
    let mut f10 = Matrix::identity(f, d0);
    f10.set_block(u0, u0, &ju);
    // f1(1): X on U_{q_{j1}} -> U_{q_{j1}+1}, X on V, 1 on U_{q_{j2}} -> U_{q_{j2}-1}
    let mut f11 = Matrix::zeros(f, d1, d1);
    let (cq, cq2) = (prefix(q), prefix(&q2));
    for j in 1..=q.len().max(j2) {
        let (s, t) = (q.part(j), q2.part(j));
        let power = usize::from(j1 <= j && j < j2);
        let block = PolyHom::monomial(f, s, t, power)?;
        f11.set_block(cq2[j - 1], cq[j - 1], &block.matrix(f));
    }
    let f20 = Matrix::identity(f, d0).submatrix(u0, u1, 0, d0);
    let f21 = src.h().submatrix(u0, u1, 0, d1);
    let g10 = f20.clone();
    let g11 = dst.h().submatrix(u0, u1, 0, d1);
    let minus_x = ju.neg(f);

    let middle = direct_sum(f, &dst, &n)?;
    let seq = ExactSequence {
        left: src,
        middle,
        right: n,
        f: (Matrix::vstack(d0, &[&f10, &f20])?, Matrix::vstack(d1, &[&f11, &f21])?),
        g: (Matrix::hstack(du, &[&g10, &minus_x])?, Matrix::hstack(du, &[&g11, &minus_x])?),
    };
    Ok(seq)
}

fn prefix(x: &Partition) -> Vec<usize> {
    let mut out = vec![0];
    let mut acc = 0;
    for j in 1..=x.len() + 1 {
        acc += x.part(j);
        out.push(acc);
    }
    out
}

/// The def-ind move on `q`, checked by an exact sequence over the rationals.
pub fn build_def_ind_sequence(p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<DegenerationEdge> {
    let f = Rationals;
    let seq = def_ind_sequence(&f, p, q, j1, j2)?;
    let witness = seq.verify(&f)?;
    Ok(DegenerationEdge {
        from: PartitionPair::new(p.clone(), q.clone())?,
        to: PartitionPair::new(p.clone(), shifted(q, j1, j2)?)?,
        mechanism: Mechanism::DefInd,
        j1,
        j2,
        witness: Some(witness),
    })
}

/// The dual move, changing `p`: the def-ind sequence for `(q, p)`,
/// transposed.
pub fn def_ind_dual_sequence<F: Field>(f: &F, p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<ExactSequence<F::Elem>> {
    Ok(def_ind_sequence(f, q, p, j1, j2)?.dual())
}

pub fn build_def_ind_dual_sequence(p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<DegenerationEdge> {
    let f = Rationals;
    let seq = def_ind_dual_sequence(&f, p, q, j1, j2)?;
    let witness = seq.verify(&f)?;
    Ok(DegenerationEdge {
        from: PartitionPair::new(p.clone(), q.clone())?,
        to: PartitionPair::new(shifted(p, j1, j2)?, q.clone())?,
        mechanism: Mechanism::DefIndDual,
        j1,
        j2,
        witness: Some(witness),
    })
}

/// Bundle-argument move on `q`; no sequence is produced. `j1 = j2` would
/// leave `q` unchanged and is rejected.
pub fn check_def_strata(p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<DegenerationEdge> {
    let to = strata_move(p, q, j1, j2)?;
    Ok(DegenerationEdge {
        from: PartitionPair::new(p.clone(), q.clone())?,
        to: PartitionPair::new(p.clone(), to)?,
        mechanism: Mechanism::DefStrata,
        j1,
        j2,
        witness: None,
    })
}

pub fn check_def_strata_dual(p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<DegenerationEdge> {
    let to = strata_move(q, p, j1, j2)?;
    Ok(DegenerationEdge {
        from: PartitionPair::new(p.clone(), q.clone())?,
        to: PartitionPair::new(to, q.clone())?,
        mechanism: Mechanism::DefStrataDual,
        j1,
        j2,
        witness: None,
    })
}

/// Checks the hypotheses for moving `q` against the fixed `p` and returns
/// the new `q'`.
fn strata_move(p: &Partition, q: &Partition, j1: usize, j2: usize) -> Result<Partition> {
    if j1 >= j2 {
        return Err(violated(format!("need j1 < j2, got ({j1}, {j2})")));
    }
    if !has_corners(q, j1, j2) {
        return Err(violated(format!("({j1}, {j2}) are not corners of ({q})")));
    }
    let (lo, hi) = (q.part(j2), q.part(j1));
    if let Some(&bad) = p.parts().iter().find(|&&x| lo <= x && x <= hi) {
        return Err(violated(format!("part {bad} lies between {lo} and {hi}")));
    }
    let q2 = shifted(q, j1, j2)?;
    if hom_dim_lambda(&q2, p) != hom_dim_lambda(q, p) {
        return Err(violated("hom dimension changes under the move".into()));
    }
    Ok(q2)
}

/// Every applicable move out of `(p, q)`; def-ind moves carry verified
/// witnesses.
pub fn degeneration_moves(pair: &PartitionPair) -> Result<Vec<DegenerationEdge>> {
    let (p, q) = (&pair.p, &pair.q);
    let mut out = Vec::new();
    for j2 in 2..=q.len() {
        for j1 in 1..j2 {
            push_move(&mut out, build_def_ind_sequence(p, q, j1, j2))?;
            push_move(&mut out, check_def_strata(p, q, j1, j2))?;
        }
    }
    for j2 in 2..=p.len() {
        for j1 in 1..j2 {
            push_move(&mut out, build_def_ind_dual_sequence(p, q, j1, j2))?;
            push_move(&mut out, check_def_strata_dual(p, q, j1, j2))?;
        }
    }
    Ok(out)
}

fn push_move(out: &mut Vec<DegenerationEdge>, edge: Result<DegenerationEdge>) -> Result<()> {
    match edge {
        Ok(e) => out.push(e),
        Err(Error::HypothesisViolated(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(())
}

/// One of `((p),(q))`, `((m,p),(q))` with `m > q > p > 0`, or
/// `((p),(m,q))` with `m > p > q > 0`.
pub fn is_component_shape(pair: &PartitionPair) -> bool {
    let (p, q, m) = (&pair.p, &pair.q, pair.bound());
    match (p.len(), q.len()) {
        (0 | 1, 0 | 1) => true,
        (2, 1) => p.part(1) == m && m > q.part(1) && q.part(1) > p.part(2),
        (1, 2) => q.part(1) == m && m > p.part(1) && p.part(1) > q.part(2),
        _ => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCandidates {
    pub candidates: Vec<PartitionPair>,
    /// Excluded indecomposable pairs with a move into a larger stratum.
    pub excluded: Vec<(PartitionPair, DegenerationEdge)>,
}

/// Indecomposable pairs of the given dimension vector whose strata can be
/// components, with an escape move recorded for each of the others.
pub fn classify_component_candidates(m: usize, d0: usize, d1: usize) -> Result<ComponentCandidates> {
    let mut candidates = Vec::new();
    let mut excluded = Vec::new();
    for pair in all_pairs(m, d0, d1) {
        if !pair.is_indecomposable() {
            continue;
        }
        if is_component_shape(&pair) {
            candidates.push(pair);
            continue;
        }
        let base = stratum_dim(&pair.p, &pair.q);
        let escape = degeneration_moves(&pair)?
            .into_iter()
            .filter(|e| matches!(e.mechanism, Mechanism::DefInd | Mechanism::DefIndDual))
            .find(|e| stratum_dim(&e.to.p, &e.to.q) > base);
        match escape {
            Some(e) => excluded.push((pair, e)),
            None => return Err(Error::NoEscapeMove(pair.to_string())),
        }
    }
    Ok(ComponentCandidates { candidates, excluded })
}

/// All of `P_m(d0) x P_m(d1)`.
pub fn all_pairs(m: usize, d0: usize, d1: usize) -> Vec<PartitionPair> {
    let qs = enumerate_partitions(d1, m);
    enumerate_partitions(d0, m)
        .into_iter()
        .flat_map(|p| qs.iter().map(move |q| PartitionPair { p: p.clone(), q: q.clone() }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumTest {
    pub shape: bool,
    pub ext_ab: usize,
    pub ext_ba: usize,
}

impl SumTest {
    pub fn consistent(&self) -> bool {
        self.shape == (self.ext_ab == 0 && self.ext_ba == 0)
    }
}

/// The six shape conditions under which a direct sum of two component
/// strata is again a component, alongside both Ext groups of the canonical
/// modules.
pub fn component_sum_test(a: &PartitionPair, b: &PartitionPair) -> Result<SumTest> {
    let m = a.bound();
    let full = PartitionPair::from_parts(&[m], &[m], m)?;
    let top0 = PartitionPair::from_parts(&[m], &[], m)?;
    let top1 = PartitionPair::from_parts(&[], &[m], m)?;
    let shape = *a == full
        || *b == full
        || (*a == top0 && b.classify().is_mono())
        || (*a == top1 && b.classify().is_epi())
        || (*b == top0 && a.classify().is_mono())
        || (*b == top1 && a.classify().is_epi());
    let f = Rationals;
    let ma = build_canonical_module(&f, &a.p, &a.q)?;
    let mb = build_canonical_module(&f, &b.p, &b.q)?;
    Ok(SumTest {
        shape,
        ext_ab: ext1_dim(&f, &ma, &mb)?,
        ext_ba: ext1_dim(&f, &mb, &ma)?,
    })
}

/// `dim Hom(T, candidate) <= dim Hom(T, target)` for every test module `T`.
pub fn hom_order_check<F: Field>(
    f: &F,
    candidate: &AModule<F::Elem>,
    target: &AModule<F::Elem>,
    tests: &[AModule<F::Elem>],
) -> Result<bool> {
    if candidate.dims() != target.dims() {
        return Err(Error::DimensionMismatch(candidate.dims(), target.dims()));
    }
    for t in tests {
        if hom_dim(f, t, candidate)? > hom_dim(f, t, target)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indecomposable pairs of total dimension at most `total`.
pub fn indecomposable_pairs_up_to(m: usize, total: usize) -> Vec<PartitionPair> {
    (0..=total)
        .flat_map(|d0| (0..=total - d0).map(move |d1| (d0, d1)))
        .flat_map(|(d0, d1)| all_pairs(m, d0, d1))
        .filter(PartitionPair::is_indecomposable)
        .collect()
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
    /// Random combinations per isomorphism search.
    pub iso_attempts: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            samples: 8,
            seed: 0,
            iso_attempts: 32,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomOrderResult {
    pub pair: PartitionPair,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplingResult {
    pub pair: PartitionPair,
    pub samples: usize,
    pub isomorphic: usize,
    pub probabilistic_negatives: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reachability {
    pub pair: PartitionPair,
    pub reached: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityCertificate {
    pub schema: u32,
    pub m: usize,
    pub d0: usize,
    pub d1: usize,
    pub sampling_field: FieldDescriptor,
    pub seed: u64,
    pub maximal_pair: PartitionPair,
    pub maximal_stratum_dim: usize,
    pub unique_maximum: bool,
    pub strata: Vec<StratumReport>,
    pub edges: Vec<DegenerationEdge>,
    pub reachability: Vec<Reachability>,
    pub hom_order_tests: usize,
    pub hom_order: Vec<HomOrderResult>,
    pub sampling: Vec<SamplingResult>,
    pub verdict: bool,
}

/// Gathers the evidence that `X_m(d0, d1)` is irreducible: a unique stratum
/// of top dimension, dense orbits in every stratum, hom-order against the
/// generic module, explicit moves towards the top, and sampled genericity.
pub fn verify_irreducibility(m: usize, d0: usize, d1: usize, cfg: &VerifyConfig) -> Result<IrreducibilityCertificate> {
    if m == 0 {
        return Err(Error::InvalidPartition("bound m must be at least 1".into()));
    }
    let fp = PrimeField::new(cfg.prime)?;
    let q = Rationals;
    let pairs = all_pairs(m, d0, d1);
    let maximal = PartitionPair {
        p: maximal_partition(d0, m),
        q: maximal_partition(d1, m),
    };

    let strata: Vec<StratumReport> = pairs
        .par_iter()
        .map(|s| check_dense_orbit_identity(&s.p, &s.q))
        .collect::<Result<_>>()?;
    let top = strata.iter().map(|r| r.stratum_dim).max().unwrap_or(0);
    let maximal_dim = stratum_dim(&maximal.p, &maximal.q);
    let unique_maximum = maximal_dim == top && strata.iter().filter(|r| r.stratum_dim == top).count() == 1;

    let tests: Vec<AModule<BigRational>> = indecomposable_pairs_up_to(m, d0 + d1)
        .iter()
        .map(|t| build_canonical_module(&q, &t.p, &t.q))
        .collect::<Result<_>>()?;
    let generic = build_canonical_module(&q, &maximal.p, &maximal.q)?;
    let hom_order: Vec<HomOrderResult> = pairs
        .par_iter()
        .map(|s| {
            let target = build_canonical_module(&q, &s.p, &s.q)?;
            Ok(HomOrderResult {
                pair: s.clone(),
                passed: hom_order_check(&q, &generic, &target, &tests)?,
            })
        })
        .collect::<Result<_>>()?;

    let edges: Vec<DegenerationEdge> = pairs
        .par_iter()
        .map(degeneration_moves)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let reachability = reachability(&pairs, &edges, &maximal);

    let sampling: Vec<SamplingResult> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, s)| sample_check(&fp, s, k, cfg))
        .collect::<Result<_>>()?;

    let verdict = unique_maximum
        && strata.iter().all(|r| r.dense_in_stratum)
        && hom_order.iter().all(|h| h.passed)
        && sampling.iter().all(|s| s.isomorphic == s.samples);
    Ok(IrreducibilityCertificate {
        schema: 1,
        m,
        d0,
        d1,
        sampling_field: fp.descriptor(),
        seed: cfg.seed,
        maximal_stratum_dim: maximal_dim,
        maximal_pair: maximal,
        unique_maximum,
        strata,
        edges,
        reachability,
        hom_order_tests: tests.len(),
        hom_order,
        sampling,
        verdict,
    })
}

fn sample_check(fp: &PrimeField, s: &PartitionPair, index: usize, cfg: &VerifyConfig) -> Result<SamplingResult> {
    let canonical = build_canonical_module(fp, &s.p, &s.q)?;
    // one independent stream per stratum, so results do not depend on scheduling
    let mut seeds = ChaCha8Rng::seed_from_u64(cfg.seed);
    seeds.set_stream(index as u64);
    let (mut iso, mut neg) = (0, 0);
    for _ in 0..cfg.samples {
        let sample = sample_stratum(fp, &s.p, &s.q, seeds.next_u64())?;
        let search = IsoSearch {
            attempts: cfg.iso_attempts,
            seed: seeds.next_u64(),
        };
        let out = isomorphism_search(fp, &sample, &canonical, search)?;
        iso += usize::from(out.isomorphic);
        neg += usize::from(out.probabilistic_negative);
    }
    Ok(SamplingResult {
        pair: s.clone(),
        samples: cfg.samples,
        isomorphic: iso,
        probabilistic_negatives: neg,
    })
}

/// Which strata reach `top` along chains of moves.
fn reachability(pairs: &[PartitionPair], edges: &[DegenerationEdge], top: &PartitionPair) -> Vec<Reachability> {
    let mut out_edges: BTreeMap<&PartitionPair, Vec<&PartitionPair>> = BTreeMap::new();
    for e in edges {
        out_edges.entry(&e.from).or_default().push(&e.to);
    }
    let mut memo: BTreeMap<&PartitionPair, bool> = BTreeMap::new();
    fn visit<'a>(
        node: &'a PartitionPair,
        top: &PartitionPair,
        out_edges: &BTreeMap<&'a PartitionPair, Vec<&'a PartitionPair>>,
        memo: &mut BTreeMap<&'a PartitionPair, bool>,
    ) -> bool {
        if node == top {
            return true;
        }
        if let Some(&r) = memo.get(node) {
            return r;
        }
        // moves strictly refine the orbit order, so the graph is acyclic;
        // the provisional entry guards against surprises anyway
        memo.insert(node, false);
        let r = out_edges
            .get(node)
            .is_some_and(|next| next.iter().any(|n| visit(n, top, out_edges, memo)));
        memo.insert(node, r);
        r
    }
    pairs
        .iter()
        .map(|s| Reachability {
            pair: s.clone(),
            reached: visit(s, top, &out_edges, &mut memo),
        })
        .collect()
}

impl IrreducibilityCertificate {
    /// Degeneration graph: strata as nodes, moves as edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph degenerations {\n  rankdir=BT;\n");
        let index: BTreeMap<&PartitionPair, usize> = self.strata.iter().enumerate().map(|(k, r)| (&r.pair, k)).collect();
        for (k, r) in self.strata.iter().enumerate() {
            let shape = if r.pair == self.maximal_pair { ", shape=box" } else { "" };
            let _ = writeln!(out, "  s{k} [label=\"({}) dim={}\"{shape}];", r.pair, r.stratum_dim);
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  s{} -> s{} [label=\"{:?}({},{})\"];",
                index[&e.from], index[&e.to], e.mechanism, e.j1, e.j2
            );
        }
        out.push_str("}\n");
        out
    }
}
