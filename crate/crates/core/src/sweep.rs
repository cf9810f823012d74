//! Exhaustive property suites over a grid of `(m, d0, d1)`.
//!
//! Every suite returns how many cases it checked and a description of each
//! failing case, in a deterministic order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::geometry::{
    all_pairs, build_def_ind_dual_sequence, build_def_ind_sequence, check_dense_orbit_identity,
    classify_component_candidates, component_sum_test, degeneration_moves, is_component_shape, stratum_dim, Mechanism,
};
use crate::module::{build_canonical_module, direct_sum, end_dim, is_indecomposable_module, isomorphism_search, IsoSearch};
use crate::pairs::PartitionPair;
use crate::partition::hom_dim_lambda;

/// The grid `1 <= m <= m_max`, `0 <= d0, d1 <= d_max`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Grid {
    pub m_max: usize,
    pub d_max: usize,
}

impl Grid {
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for m in 1..=self.m_max {
            for d0 in 0..=self.d_max {
                for d1 in 0..=self.d_max {
                    out.push((m, d0, d1));
                }
            }
        }
        out
    }

    /// Every pair of partitions in the grid.
    pub fn pairs(&self) -> Vec<PartitionPair> {
        self.triples().into_iter().flat_map(|(m, d0, d1)| all_pairs(m, d0, d1)).collect()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `check` on every item in parallel; `Ok(None)` skips, `Ok(Some(true))`
/// passes.
fn run<T: Sync>(
    suite: &str,
    items: &[T],
    check: impl Fn(&T) -> Result<Option<(bool, String)>> + Sync,
) -> SuiteResult {
    let outcomes: Vec<Option<(bool, String)>> = items
        .par_iter()
        .map(|x| match check(x) {
            Ok(r) => r,
            Err(e) => Some((false, format!("error: {e}"))),
        })
        .collect();
    let mut res = SuiteResult {
        suite: suite.to_string(),
        ..SuiteResult::default()
    };
    for (ok, label) in outcomes.into_iter().flatten() {
        res.checked += 1;
        if !ok {
            res.failures.push(label);
        }
    }
    res
}

/// `end_dim(M_{p,q}) = hom(p,p) + hom(q,q) - hom(q,p)` and the matching
/// orbit/stratum equality.
pub fn dense_identity_suite(grid: Grid) -> SuiteResult {
    run("dense-orbit identity", &grid.pairs(), |s| {
        let module = build_canonical_module(&Rationals, &s.p, &s.q)?;
        let e = end_dim(&Rationals, &module)?;
        let predicted = hom_dim_lambda(&s.p, &s.p) + hom_dim_lambda(&s.q, &s.q) - hom_dim_lambda(&s.q, &s.p);
        let report = check_dense_orbit_identity(&s.p, &s.q)?;
        Ok(Some((e == predicted && report.dense_in_stratum, format!("({s}) end={e} predicted={predicted}"))))
    })
}

fn weakly_indecomposable(grid: Grid) -> Vec<PartitionPair> {
    grid.pairs().into_iter().filter(PartitionPair::is_weakly_indecomposable).collect()
}

/// Adding a summand `((n),(n))` to a weakly indecomposable pair splits off
/// `M_{(n),(n)}`. Probabilistic negatives count as failures.
pub fn split_off_suite(grid: Grid) -> SuiteResult {
    let cases: Vec<(PartitionPair, usize)> = weakly_indecomposable(grid)
        .into_iter()
        .flat_map(|s| (1..=s.bound()).map(move |n| (s.clone(), n)))
        .collect();
    run("square block splits off", &cases, |(s, n)| {
        let f = Rationals;
        let m = s.bound();
        let block = PartitionPair::from_parts(&[*n], &[*n], m)?;
        let joined = s.union(&block)?;
        let lhs = build_canonical_module(&f, &joined.p, &joined.q)?;
        let rhs = direct_sum(
            &f,
            &build_canonical_module(&f, &s.p, &s.q)?,
            &build_canonical_module(&f, &block.p, &block.q)?,
        )?;
        let out = isomorphism_search(&f, &lhs, &rhs, IsoSearch::default())?;
        let label = format!("({s}) + (({n}),({n})) probabilistic_negative={}", out.probabilistic_negative);
        Ok(Some((out.isomorphic, label)))
    })
}

/// The endomorphism ring test agrees with the combinatorial one.
pub fn indecomposability_suite(grid: Grid) -> SuiteResult {
    let cases: Vec<PartitionPair> = weakly_indecomposable(grid)
        .into_iter()
        .filter(|s| s.dims() != (0, 0))
        .collect();
    run("indecomposability", &cases, |s| {
        let module = build_canonical_module(&Rationals, &s.p, &s.q)?;
        let by_module = is_indecomposable_module(&Rationals, &module)?;
        Ok(Some((by_module == s.is_indecomposable(), format!("({s}) module={by_module}"))))
    })
}

/// Every admissible def-ind move (and its dual) on a weakly indecomposable
/// pair yields a verified exact sequence.
pub fn def_ind_suite(grid: Grid) -> SuiteResult {
    let cases: Vec<(PartitionPair, bool, usize, usize)> = weakly_indecomposable(grid)
        .into_iter()
        .flat_map(|s| {
            let (lp, lq) = (s.p.len(), s.q.len());
            let on_q = (2..=lq).flat_map(|j2| (1..j2).map(move |j1| (false, j1, j2)));
            let on_p = (2..=lp).flat_map(|j2| (1..j2).map(move |j1| (true, j1, j2)));
            on_q.chain(on_p).map(move |(d, j1, j2)| (s.clone(), d, j1, j2)).collect::<Vec<_>>()
        })
        .collect();
    run("def-ind exactness", &cases, |(s, on_p, j1, j2)| {
        let edge = if *on_p {
            build_def_ind_dual_sequence(&s.p, &s.q, *j1, *j2)
        } else {
            build_def_ind_sequence(&s.p, &s.q, *j1, *j2)
        };
        let label = format!("({s}) {} ({j1},{j2})", if *on_p { "dual" } else { "direct" });
        match edge {
            Ok(e) => Ok(Some((e.witness.is_some(), label))),
            Err(Error::HypothesisViolated(_)) => Ok(None),
            Err(e) => Ok(Some((false, format!("{label}: {e}")))),
        }
    })
}

/// Candidates are exactly the three families, every other indecomposable
/// pair has an escape move, and no candidate has one.
pub fn component_candidates_suite(grid: Grid) -> SuiteResult {
    run("component candidates", &grid.triples(), |&(m, d0, d1)| {
        let label = format!("m={m} d0={d0} d1={d1}");
        let found = match classify_component_candidates(m, d0, d1) {
            Ok(c) => c,
            Err(e) => return Ok(Some((false, format!("{label}: {e}")))),
        };
        let expected: Vec<PartitionPair> = all_pairs(m, d0, d1)
            .into_iter()
            .filter(|s| s.is_indecomposable() && is_component_shape(s))
            .collect();
        let mut ok = found.candidates == expected;
        for c in &found.candidates {
            let base = stratum_dim(&c.p, &c.q);
            let escapes = degeneration_moves(c)?
                .into_iter()
                .any(|e| matches!(e.mechanism, Mechanism::DefInd | Mechanism::DefIndDual)
                    && stratum_dim(&e.to.p, &e.to.q) > base);
            ok &= !escapes;
        }
        Ok(Some((ok, label)))
    })
}

/// Component-shaped indecomposable pairs with both dimensions at most
/// `d_max`, for one `m`.
pub fn component_shapes(m: usize, d_max: usize) -> Vec<PartitionPair> {
    let mut out = Vec::new();
    for d0 in 0..=d_max {
        for d1 in 0..=d_max {
            out.extend(
                all_pairs(m, d0, d1)
                    .into_iter()
                    .filter(|s| s.is_indecomposable() && is_component_shape(s)),
            );
        }
    }
    out
}

/// The six shape conditions agree with vanishing of both Ext groups.
pub fn ext_consistency_suite(grid: Grid) -> SuiteResult {
    let cases: Vec<(PartitionPair, PartitionPair)> = (1..=grid.m_max)
        .flat_map(|m| {
            let shapes = component_shapes(m, grid.d_max);
            shapes
                .iter()
                .flat_map(|a| shapes.iter().map(move |b| (a.clone(), b.clone())))
                .collect::<Vec<_>>()
        })
        .collect();
    run("ext consistency", &cases, |(a, b)| {
        let t = component_sum_test(a, b)?;
        Ok(Some((
            t.consistent(),
            format!("({a}) ({b}) shape={} ext={},{}", t.shape, t.ext_ab, t.ext_ba),
        )))
    })
}

/// All suites in a fixed order.
pub fn run_all(grid: Grid) -> Vec<SuiteResult> {
    vec![
        dense_identity_suite(grid),
        split_off_suite(grid),
        indecomposability_suite(grid),
        def_ind_suite(grid),
        component_candidates_suite(grid),
        ext_consistency_suite(grid),
    ]
}
