//! `maskquorum`: build masking quorum systems and report their parameters,
//! load, crash probability and bounds.

mod commands;
mod format;
mod oracle;
mod table8;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use maskquorum::ConstructionSpec;

/// Default cap on the number of quorums materialized for explicit analysis.
const DEFAULT_CAP: u128 = 10_000;

#[derive(Parser)]
#[command(
    name = "maskquorum",
    version,
    about = "Analysis of b-masking quorum systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the system parameters as JSON.
    Params {
        /// Inline JSON (starting with '{') or a path to a JSON file.
        spec: String,
    },
    /// Load of the system: LP on the materialized system when small enough,
    /// otherwise the construction's analytic load.
    Load {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        materialize_cap: u128,
    },
    /// Crash probability estimate, with the applicable bounds.
    Fp {
        spec: String,
        #[arg(long)]
        p: f64,
        /// Enumerate every crash set (n <= 25).
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        /// Monte Carlo estimate.
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also report closed-form bounds.
        #[arg(long)]
        bounds: bool,
        /// Auxiliary probability for the M-Path bound; defaults to (p + 1/3) / 2.
        #[arg(long)]
        p_prime: Option<f64>,
    },
    /// Parameters of `outer ∘ inner`, checked against the explicit
    /// composition when it fits under the cap.
    Compose {
        outer: String,
        inner: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        materialize_cap: u128,
    },
    /// The comparison table of M-Grid, RT, boostFPP and M-Path.
    Table8 {
        #[arg(long, default_value_t = 0.125)]
        p: f64,
        #[arg(long, default_value_t = 1024)]
        n: u64,
        /// Auxiliary probability for the M-Path bound.
        #[arg(long, default_value_t = 1.0 / 7.0)]
        p_prime: f64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Materialize the system and cross-check its analytic claims by brute force.
    Oracle {
        spec: String,
        #[arg(long, default_value_t = 100_000)]
        materialize_cap: u128,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// Raised when a brute-force check disagrees with an analytic claim.
#[derive(Debug)]
struct OracleMismatch(usize);

impl std::fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} oracle check(s) failed", self.0)
    }
}

impl std::error::Error for OracleMismatch {}

/// Malformed input that is not a library error.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn parse_spec(arg: &str) -> anyhow::Result<ConstructionSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        let path = PathBuf::from(arg);
        std::fs::read_to_string(&path)
            .map_err(|e| Usage(format!("cannot read spec file {}: {e}", path.display())))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Usage(format!("invalid construction spec: {e}")))
        .context("parsing spec")
}

/// Worker count from `MASKQUORUM_THREADS`, if set.
fn threads_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var("MASKQUORUM_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Usage(format!(
                "MASKQUORUM_THREADS must be a positive integer, got {v:?}"
            ))
            .into()),
        },
        Err(_) => Ok(None),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<OracleMismatch>().is_some() {
        return 4;
    }
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<maskquorum::Error>() {
        Some(maskquorum::Error::Size { .. }) => 3,
        Some(maskquorum::Error::Numerical(_)) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.downcast_ref::<std::io::Error>()
        .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Params { spec } => commands::params(&parse_spec(&spec)?),
        Command::Load {
            spec,
            materialize_cap,
        } => commands::load(&parse_spec(&spec)?, materialize_cap),
        Command::Fp {
            spec,
            p,
            exact,
            mc,
            trials,
            seed,
            bounds,
            p_prime,
        } => {
            let method = match (exact, mc) {
                (true, _) => commands::Method::Exact,
                (_, true) => commands::Method::MonteCarlo,
                _ => commands::Method::Auto,
            };
            let opts = commands::FpOptions {
                p,
                method,
                trials,
                seed,
                bounds,
                p_prime,
                threads: threads_from_env()?,
            };
            commands::fp(&parse_spec(&spec)?, &opts)
        }
        Command::Compose {
            outer,
            inner,
            materialize_cap,
        } => commands::compose(&parse_spec(&outer)?, &parse_spec(&inner)?, materialize_cap),
        Command::Table8 {
            p,
            n,
            p_prime,
            format,
        } => {
            let rows = table8::rows(p, n, p_prime)?;
            match format {
                TableFormat::Csv => {
                    format::emit(&table8::to_csv(&rows)?)?;
                    for note in table8::NOTES {
                        eprintln!("note: {note}");
                    }
                }
                TableFormat::Json => {
                    format::emit(&format!("{}\n", table8::to_json(&rows, p, n, p_prime)?))?
                }
            }
            Ok(())
        }
        Command::Oracle {
            spec,
            materialize_cap,
        } => {
            let failures = oracle::run(&parse_spec(&spec)?, materialize_cap)?;
            if failures > 0 {
                return Err(OracleMismatch(failures).into());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.root_cause());
            ExitCode::from(exit_code(&err))
        }
    }
}
