//! Command implementations behind the `birkhoff` binary. Each command
//! renders its full output as a string so the binary and the tests share one
//! code path.

use std::fmt::Write as _;

use birkhoff::geometry::{verify_irreducibility, VerifyConfig};
use birkhoff::module::{build_canonical_module, ext1_dim, hom_dim, is_gorenstein_projective, ModuleJson};
use birkhoff::pairs::{canonical_decomposition, PartitionPair};
use birkhoff::sweep::{run_all, Grid};
use birkhoff::{Field, Matrix, PrimeField, Rationals};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] birkhoff::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Output {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub field: FieldChoice,
    pub prime: u64,
    pub seed: u64,
    pub samples: usize,
    pub output: Output,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            field: FieldChoice::Rational,
            prime: birkhoff::DEFAULT_PRIME,
            seed: 0,
            samples: 8,
            output: Output::Text,
        }
    }
}

impl CliConfig {
    /// Rejects a bad modulus up front, whatever the field choice.
    pub fn validate(&self) -> CliResult<()> {
        PrimeField::new(self.prime)?;
        Ok(())
    }
}

/// Rendered output plus the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, exit_code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> CliError {
    CliError::Usage(format!("`{cmd}` has no dot output"))
}

/// The bound implied by a pair text when `--m` is absent: its largest part.
pub fn infer_bound(text: &str) -> usize {
    text.split(['|', ','])
        .filter_map(|t| t.trim().parse::<usize>().ok())
        .max()
        .unwrap_or(1)
        .max(1)
}

pub fn cmd_decompose(pair_text: &str, m: usize, output: Output) -> CliResult<Outcome> {
    let pair = PartitionPair::parse(pair_text, m)?;
    let dec = canonical_decomposition(&pair.p, &pair.q)?;
    let text = match output {
        Output::Text => {
            let mut s = String::new();
            for summand in &dec.summands {
                let _ = writeln!(s, "({summand})");
            }
            s
        }
        Output::Json => json(&dec),
        Output::Dot => dec.to_dot(),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct ModuleOutput {
    #[serde(flatten)]
    module: ModuleJson,
    gorenstein_projective: bool,
}

fn render_matrix<F: Field>(f: &F, name: &str, a: &Matrix<F::Elem>, out: &mut String) {
    let _ = writeln!(out, "{name} ({}x{}):", a.rows(), a.cols());
    for r in 0..a.rows() {
        let row: Vec<String> = a.row(r).iter().map(|e| f.format(e)).collect();
        let _ = writeln!(out, "  [{}]", row.join(" "));
    }
}

fn module_in<F: Field>(f: &F, pair: &PartitionPair, output: Output) -> CliResult<String> {
    let module = build_canonical_module(f, &pair.p, &pair.q)?;
    let gp = is_gorenstein_projective(f, &module);
    Ok(match output {
        Output::Json => json(&ModuleOutput {
            module: ModuleJson::new(f, &module),
            gorenstein_projective: gp,
        }),
        Output::Text => {
            let (d0, d1) = module.dims();
            let mut s = format!("pair ({pair}) m={} field={}\nd0={d0} d1={d1} gorenstein_projective={gp}\n", pair.bound(), f.descriptor());
            render_matrix(f, "M0", module.m0(), &mut s);
            render_matrix(f, "M1", module.m1(), &mut s);
            render_matrix(f, "h", module.h(), &mut s);
            s
        }
        Output::Dot => return Err(no_dot("module")),
    })
}

pub fn cmd_module(pair_text: &str, m: usize, cfg: &CliConfig) -> CliResult<Outcome> {
    cfg.validate()?;
    let pair = PartitionPair::parse(pair_text, m)?;
    let text = match cfg.field {
        FieldChoice::Rational => module_in(&Rationals, &pair, cfg.output)?,
        FieldChoice::Prime => module_in(&PrimeField::new(cfg.prime)?, &pair, cfg.output)?,
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct BothWays<'a> {
    quantity: &'a str,
    a: String,
    b: String,
    m: usize,
    ab: usize,
    ba: usize,
}

fn both_ways<F: Field>(f: &F, a: &PartitionPair, b: &PartitionPair, ext: bool) -> CliResult<(usize, usize)> {
    let ma = build_canonical_module(f, &a.p, &a.q)?;
    let mb = build_canonical_module(f, &b.p, &b.q)?;
    let value = |x, y| if ext { ext1_dim(f, x, y) } else { hom_dim(f, x, y) };
    Ok((value(&ma, &mb)?, value(&mb, &ma)?))
}

fn pairwise(a_text: &str, b_text: &str, m: usize, cfg: &CliConfig, ext: bool) -> CliResult<Outcome> {
    cfg.validate()?;
    let a = PartitionPair::parse(a_text, m)?;
    let b = PartitionPair::parse(b_text, m)?;
    let (ab, ba) = match cfg.field {
        FieldChoice::Rational => both_ways(&Rationals, &a, &b, ext)?,
        FieldChoice::Prime => both_ways(&PrimeField::new(cfg.prime)?, &a, &b, ext)?,
    };
    let quantity = if ext { "ext1" } else { "hom" };
    let text = match cfg.output {
        Output::Text => format!("{quantity}(({a}), ({b})) = {ab}\n{quantity}(({b}), ({a})) = {ba}\n"),
        Output::Json => json(&BothWays {
            quantity,
            a: a.to_string(),
            b: b.to_string(),
            m,
            ab,
            ba,
        }),
        Output::Dot => return Err(no_dot(quantity)),
    };
    Ok(Outcome::ok(text))
}

/// `dim Hom` between two canonical modules, both ways.
pub fn cmd_hom(a: &str, b: &str, m: usize, cfg: &CliConfig) -> CliResult<Outcome> {
    pairwise(a, b, m, cfg, false)
}

/// `dim Ext^1` between two canonical modules, both ways.
pub fn cmd_ext(a: &str, b: &str, m: usize, cfg: &CliConfig) -> CliResult<Outcome> {
    pairwise(a, b, m, cfg, true)
}

pub fn cmd_verify(m: usize, d0: usize, d1: usize, cfg: &CliConfig) -> CliResult<Outcome> {
    cfg.validate()?;
    let vcfg = VerifyConfig {
        prime: cfg.prime,
        samples: cfg.samples,
        seed: cfg.seed,
        ..VerifyConfig::default()
    };
    let cert = verify_irreducibility(m, d0, d1, &vcfg)?;
    let text = match cfg.output {
        Output::Json => json(&cert),
        Output::Dot => cert.to_dot(),
        Output::Text => {
            let mut s = format!("X_{m}({d0},{d1}): {} strata\n", cert.strata.len());
            let _ = writeln!(
                s,
                "maximal pair ({}) dim={} unique={}",
                cert.maximal_pair, cert.maximal_stratum_dim, cert.unique_maximum
            );
            let dense = cert.strata.iter().filter(|r| r.dense_in_stratum).count();
            let hom_ok = cert.hom_order.iter().filter(|h| h.passed).count();
            let reached = cert.reachability.iter().filter(|r| r.reached).count();
            let sampled = cert.sampling.iter().filter(|r| r.isomorphic == r.samples).count();
            let n = cert.strata.len();
            let _ = writeln!(s, "dense orbits: {dense}/{n}");
            let _ = writeln!(s, "hom-order ({} test modules): {hom_ok}/{n}", cert.hom_order_tests);
            let _ = writeln!(s, "degeneration edges: {}, reaching the top: {reached}/{n}", cert.edges.len());
            let _ = writeln!(s, "sampling ({} per stratum): {sampled}/{n}", cfg.samples);
            let _ = writeln!(s, "verdict: {}", cert.verdict);
            s
        }
    };
    Ok(Outcome {
        text,
        exit_code: if cert.verdict { 0 } else { 1 },
    })
}

pub fn cmd_sweep(m_max: usize, d_max: usize, cfg: &CliConfig) -> CliResult<Outcome> {
    let results = run_all(Grid { m_max, d_max });
    let all_pass = results.iter().all(|r| r.passed());
    let text = match cfg.output {
        Output::Json => json(&results),
        Output::Text => {
            let mut s = format!("{:<24} {:>8} {:>8}\n", "suite", "checked", "failed");
            for r in &results {
                let _ = writeln!(s, "{:<24} {:>8} {:>8}", r.suite, r.checked, r.failures.len());
                for f in &r.failures {
                    let _ = writeln!(s, "  FAIL {f}");
                }
            }
            s
        }
        Output::Dot => return Err(no_dot("sweep")),
    };
    Ok(Outcome {
        text,
        exit_code: if all_pass { 0 } else { 1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_bound() {
        assert_eq!(infer_bound("6,3,2|4,2,1"), 6);
        assert_eq!(infer_bound("|"), 1);
    }

    #[test]
    fn decompose_modes() {
        let out = cmd_decompose("|", 2, Output::Text).unwrap();
        assert_eq!(out.text, "");
        assert!(matches!(
            cmd_decompose("3,a|2", 3, Output::Text),
            Err(CliError::Core(birkhoff::Error::Parse { position: 2, .. }))
        ));
        assert!(cmd_decompose("3,1|2", 3, Output::Dot).unwrap().text.starts_with("graph"));
    }

    #[test]
    fn module_examples() {
        let cfg = CliConfig { output: Output::Json, ..CliConfig::default() };
        let out = cmd_module("2|1", 2, &cfg).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["h"], serde_json::json!([["0"], ["1"]]));
        assert_eq!(v["gorenstein_projective"], true);
        let fig = cmd_module("6,3,2|4,2,1", 6, &cfg).unwrap();
        let v: serde_json::Value = serde_json::from_str(&fig.text).unwrap();
        assert_eq!((v["d0"].as_u64(), v["d1"].as_u64()), (Some(11), Some(7)));
    }

    #[test]
    fn hom_ext_examples() {
        let cfg = CliConfig::default();
        assert!(cmd_hom("1|1", "1|1", 2, &cfg).unwrap().text.starts_with("hom((1|1), (1|1)) = 1"));
        assert!(cmd_ext("1|1", "1|1", 2, &cfg).unwrap().text.starts_with("ext1((1|1), (1|1)) = 1"));
        let out = cmd_hom("1|", "|1", 2, &cfg).unwrap();
        assert!(out.text.contains("= 0\n"));
    }

    #[test]
    fn bad_prime_is_rejected() {
        let cfg = CliConfig { prime: 15, ..CliConfig::default() };
        let err = cmd_module("1|1", 1, &cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_exit_codes() {
        let cfg = CliConfig { samples: 2, ..CliConfig::default() };
        assert_eq!(cmd_verify(1, 2, 2, &cfg).unwrap().exit_code, 0);
        assert_eq!(cmd_sweep(0, 0, &cfg).unwrap().exit_code, 0);
    }
}
