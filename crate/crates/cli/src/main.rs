use std::path::PathBuf;
use std::process::ExitCode;

use birkhoff_cli::{
    cmd_decompose, cmd_ext, cmd_hom, cmd_module, cmd_sweep, cmd_verify, infer_bound, CliConfig, CliError, FieldChoice,
    Outcome, Output,
};
use clap::{Parser, Subcommand};

/// Partition pairs, canonical modules and irreducibility certificates.
#[derive(Parser, Debug)]
#[command(name = "birkhoff", version)]
struct Cli {
    /// Nilpotency bound; defaults to the largest part of the pair arguments.
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "rational")]
    field: FieldChoice,
    /// Modulus for the prime field and for sampling.
    #[arg(long, global = true, default_value_t = birkhoff::DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Samples per stratum in `verify`.
    #[arg(long, global = true, default_value_t = 8)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Output,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical decomposition of a pair `p1,p2,..|q1,q2,..`.
    Decompose { pair: String },
    /// The canonical module of a pair.
    Module { pair: String },
    /// Hom dimensions between two canonical modules, both ways.
    Hom { a: String, b: String },
    /// Ext^1 dimensions between two canonical modules, both ways.
    Ext { a: String, b: String },
    /// Irreducibility certificate for X_m(d0, d1).
    Verify {
        #[arg(long)]
        d0: usize,
        #[arg(long)]
        d1: usize,
    },
    /// Property suites over 1 <= m <= m-max, 0 <= d0, d1 <= d-max.
    Sweep {
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        d_max: usize,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = CliConfig {
        field: cli.field,
        prime: cli.prime,
        seed: cli.seed,
        samples: cli.samples,
        output: cli.output,
    };
    let bound = |texts: &[&str]| cli.m.unwrap_or_else(|| texts.iter().map(|t| infer_bound(t)).max().unwrap_or(1));
    match &cli.command {
        Command::Decompose { pair } => cmd_decompose(pair, bound(&[pair]), cfg.output),
        Command::Module { pair } => cmd_module(pair, bound(&[pair]), &cfg),
        Command::Hom { a, b } => cmd_hom(a, b, bound(&[a, b]), &cfg),
        Command::Ext { a, b } => cmd_ext(a, b, bound(&[a, b]), &cfg),
        Command::Verify { d0, d1 } => {
            let m = cli.m.ok_or_else(|| CliError::Usage("verify needs --m".into()))?;
            cmd_verify(m, *d0, *d1, &cfg)
        }
        Command::Sweep { m_max, d_max } => cmd_sweep(*m_max, *d_max, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|out| {
        match &cli.out_file {
            Some(path) => std::fs::write(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out)
    });
    match outcome {
        Ok(out) => ExitCode::from(out.exit_code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
