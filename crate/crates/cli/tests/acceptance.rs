//! One line per acceptance criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use birkhoff::field::{Field, PrimeField, Rationals};
use birkhoff::linalg::rank;
use birkhoff::module::{build_canonical_module, hom_dim, AModule};
use birkhoff::pairs::{summand_multiset, PartitionPair};
use birkhoff::sweep::{
    def_ind_suite, dense_identity_suite, ext_consistency_suite, component_candidates_suite, indecomposability_suite, split_off_suite, Grid,
    SuiteResult,
};
use birkhoff::{Matrix, PolyHom};
use birkhoff_cli::{cmd_decompose, cmd_verify, CliConfig, FieldChoice, Output};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const GOLDEN_LIMIT: Duration = Duration::from_millis(10);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);
const CERTIFICATE_LIMIT: Duration = Duration::from_secs(300);
const CROSS_FIELD_CASES: u32 = 1000;
const GRID: Grid = Grid { m_max: 4, d_max: 6 };

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, n: usize, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn suite_summary(r: &SuiteResult) -> String {
    let head: Vec<&String> = r.failures.iter().take(3).collect();
    format!("{}: {} checked, {} failed {head:?}", r.suite, r.checked, r.failures.len())
}

fn golden_decomposition() -> (bool, String) {
    let m = 19;
    let text = "19,18,17,16,13,13,10,10,9,6,6,2,2,1|19,15,14,13,13,13,12,8,4,4,3,2";
    // warm the allocator and parser once so the timing reflects the algorithm
    let _ = cmd_decompose(text, m, Output::Text);
    let (out, t) = timed(|| cmd_decompose(text, m, Output::Text));
    let Ok(out) = out else {
        return (false, "decompose returned an error".into());
    };
    let got: Vec<PartitionPair> = out
        .text
        .lines()
        .map(|l| PartitionPair::parse(l.trim_matches(|c| c == '(' || c == ')'), m).unwrap())
        .collect();
    let expected: Vec<PartitionPair> = [
        (&[19][..], &[19][..]),
        (&[13], &[13]),
        (&[13], &[13]),
        (&[2], &[2]),
        (&[18, 10, 2], &[13, 3]),
        (&[17, 9, 6, 1], &[14, 8, 4]),
        (&[16, 6], &[15, 4]),
        (&[10], &[12]),
    ]
    .iter()
    .map(|(p, q)| PartitionPair::from_parts(p, q, m).unwrap())
    .collect();
    let ok = summand_multiset(&got) == summand_multiset(&expected) && t < GOLDEN_LIMIT;
    (ok, format!("{} summands in {t:?} (limit {GOLDEN_LIMIT:?})", got.len()))
}

/// `h` is block lower bidiagonal with `X^{p_i - q_i}` on the diagonal and
/// `1` just below it.
fn mono_blocks_match<F: Field>(f: &F, module: &AModule<F::Elem>, p: &[usize], q: &[usize]) -> bool {
    let h = module.h();
    let mut r0 = 0;
    for (i, &pi) in p.iter().enumerate() {
        let mut c0 = 0;
        for (j, &qj) in q.iter().enumerate() {
            let block = h.submatrix(r0, r0 + pi, c0, c0 + qj);
            let expected = if i == j {
                PolyHom::monomial(f, qj, pi, pi - qj).unwrap().matrix(f)
            } else if i == j + 1 {
                PolyHom::monomial(f, qj, pi, 0).unwrap().matrix(f)
            } else {
                Matrix::zeros(f, pi, qj)
            };
            if block != expected {
                return false;
            }
            c0 += qj;
        }
        r0 += pi;
    }
    true
}

fn golden_module() -> (bool, String) {
    let f = Rationals;
    let (p, q, m) = ([6, 3, 2], [4, 2, 1], 6);
    let s = PartitionPair::from_parts(&p, &q, m).unwrap();
    let _ = build_canonical_module(&f, &s.p, &s.q);
    let (module, t) = timed(|| build_canonical_module(&f, &s.p, &s.q));
    let Ok(module) = module else {
        return (false, "module construction failed".into());
    };
    let (d0, d1) = module.dims();
    let valid = AModule::new(&f, m, module.m0().clone(), module.m1().clone(), module.h().clone()).is_ok();
    let blocks = mono_blocks_match(&f, &module, &p, &q);
    let ok = (d0, d1) == (11, 7) && valid && blocks && t < GOLDEN_LIMIT;
    (ok, format!("d0={d0} d1={d1} valid={valid} blocks={blocks} in {t:?} (limit {GOLDEN_LIMIT:?})"))
}

fn certificates() -> (bool, String) {
    let cfg = CliConfig {
        field: FieldChoice::Prime,
        samples: 8,
        output: Output::Json,
        ..CliConfig::default()
    };
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for m in 1..=3 {
        for d0 in 0..=5 {
            for d1 in 0..=5 {
                triples.push((m, d0, d1));
            }
        }
    }
    triples.push((4, 4, 4));
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for &(m, d0, d1) in &triples {
        let (out, t) = timed(|| cmd_verify(m, d0, d1, &cfg));
        slowest = slowest.max(t);
        let sampled_ok = out.as_ref().is_ok_and(|o| {
            let v: serde_json::Value = serde_json::from_str(&o.text).unwrap();
            v["sampling"]
                .as_array()
                .unwrap()
                .iter()
                .all(|r| r["isomorphic"] == r["samples"] && r["samples"] == 8)
        });
        let exit_ok = out.as_ref().is_ok_and(|o| o.exit_code == 0);
        if !(exit_ok && sampled_ok && t < CERTIFICATE_LIMIT) {
            failures.push((m, d0, d1));
        }
    }
    (
        failures.is_empty(),
        format!(
            "{} certificates, slowest {slowest:?} (limit {CERTIFICATE_LIMIT:?}), failing {failures:?}",
            triples.len()
        ),
    )
}

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(move |(r, c)| (Just(r), Just(c), prop::collection::vec(-bound..=bound, r * c)))
}

/// Product of integer elementary matrices, hence invertible over every field.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<i64> {
    if n == 0 {
        return Vec::new();
    }
    let mut g: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
    for &(a, b, c) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        // row a += c * row b
        for col in 0..n {
            g[a * n + col] += c * g[b * n + col];
        }
    }
    g
}

fn conjugated<F: Field>(f: &F, s: &PartitionPair, ops: &[(usize, usize, i64)]) -> AModule<F::Elem> {
    let module = build_canonical_module(f, &s.p, &s.q).unwrap();
    let (d0, d1) = module.dims();
    let g0 = Matrix::from_i64(f, d0, d0, &unimodular(d0, ops)).unwrap();
    let g1 = Matrix::from_i64(f, d1, d1, &unimodular(d1, ops)).unwrap();
    module.act(f, &g0, &g1).unwrap()
}

fn small_pair() -> impl Strategy<Value = PartitionPair> {
    let part = |m: usize| {
        prop::collection::vec(1..=m, 0..=3).prop_map(move |mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
    };
    (part(3), part(3)).prop_map(|(p, q)| PartitionPair::from_parts(&p, &q, 3).unwrap())
}

fn cross_field() -> (bool, String) {
    let q = Rationals;
    let fp = PrimeField::default();
    let config = Config {
        cases: CROSS_FIELD_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    // entries of size at most 9 in at most 6x6 keep every minor far below the
    // prime, so the ranks must agree exactly
    let ranks = TestRunner::new(config.clone()).run(&int_matrix(6, 9), |(r, c, data)| {
        let a = Matrix::from_i64(&q, r, c, &data).unwrap();
        let b = Matrix::from_i64(&fp, r, c, &data).unwrap();
        prop_assert_eq!(rank(&q, &a), rank(&fp, &b));
        Ok(())
    });
    let ops = prop::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..12);
    let homs = TestRunner::new(config).run(&(small_pair(), small_pair(), ops), |(s, t, ops)| {
        let (a_q, b_q) = (conjugated(&q, &s, &ops), conjugated(&q, &t, &ops));
        let (a_p, b_p) = (conjugated(&fp, &s, &ops), conjugated(&fp, &t, &ops));
        prop_assert_eq!(hom_dim(&q, &a_q, &b_q).unwrap(), hom_dim(&fp, &a_p, &b_p).unwrap());
        Ok(())
    });
    let ok = ranks.is_ok() && homs.is_ok();
    let detail = format!(
        "{CROSS_FIELD_CASES} rank cases: {}, {CROSS_FIELD_CASES} hom cases: {}",
        ranks.map_or_else(|e| e.to_string(), |()| "agree".into()),
        homs.map_or_else(|e| e.to_string(), |()| "agree".into()),
    );
    (ok, detail)
}

fn main() {
    let mut report = Report { failed: 0 };

    let (ok, d) = golden_decomposition();
    report.line(1, ok, d);
    let (ok, d) = golden_module();
    report.line(2, ok, d);

    let (r, t) = timed(|| dense_identity_suite(GRID));
    report.line(3, r.passed() && t < SWEEP_LIMIT, format!("{} in {t:?} (limit {SWEEP_LIMIT:?})", suite_summary(&r)));

    let iso = split_off_suite(GRID);
    let ind = indecomposability_suite(GRID);
    let flagged = iso.failures.iter().filter(|l| l.contains("probabilistic_negative=true")).count();
    report.line(
        4,
        iso.passed() && ind.passed() && flagged == 0,
        format!("{}; {}; probabilistic negatives {flagged}", suite_summary(&iso), suite_summary(&ind)),
    );

    let r = def_ind_suite(GRID);
    report.line(5, r.passed() && r.checked > 0, suite_summary(&r));
    let r = component_candidates_suite(GRID);
    report.line(6, r.passed(), suite_summary(&r));
    let r = ext_consistency_suite(GRID);
    report.line(7, r.passed() && r.checked > 0, suite_summary(&r));

    let (ok, d) = certificates();
    report.line(8, ok, d);
    let (ok, d) = cross_field();
    report.line(9, ok, d);

    if report.failed > 0 {
        println!("{} criteria failed", report.failed);
        std::process::exit(1);
    }
}
