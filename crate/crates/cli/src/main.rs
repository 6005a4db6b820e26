//! Batch front end: every computation in the library as a subcommand
//! emitting JSON or CSV.
//!
//! Exit codes: 0 success, 1 domain error (a precondition of the
//! computation failed), 2 invalid flags, 3 output I/O failure.
//! Identical invocations produce bit-identical output; `--threads`
//! changes scheduling, never results.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use primespan::congruence::{linnik_scan, verify_moment_identity};
use primespan::cramer::{compare_true_primes, simulate, simulate_exhaustive};
use primespan::interval::{coverage, interval_histogram, pair_report, DEFAULT_ERROR_CONSTANT};
use primespan::report::{to_json, CsvReport};
use primespan::singular::{
    gallagher_pair_sum, singular_series_with, twin_prime_constant, DEFAULT_TWIN_CUTOFF,
};

#[derive(Parser, Debug)]
#[command(
    name = "primespan",
    version,
    about = "Desk-scale statistics of primes in short intervals and residue classes"
)]
struct RunConfig {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this path instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Cap worker threads (default: all cores). Affects speed only;
    /// results are identical for any value.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Histogram of prime counts in (n, n+floor(lambda ln x)] over n in [x, 2x).
    Interval {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        lambda: f64,
    },

    /// Fraction of n in [x, 2x) whose window holds a prime, with moments
    /// and the exact Cauchy products.
    Coverage {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        lambda: f64,
    },

    /// Count of n in [x, 2x) with n+h1 and n+h2 both prime, plus the
    /// sieve upper bound when h1 != h2.
    Pairs {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        h1: u64,
        #[arg(long)]
        h2: u64,
        /// Constant C in the bound's error factor.
        #[arg(long, default_value_t = DEFAULT_ERROR_CONSTANT)]
        error_constant: f64,
    },

    /// Singular series value at a nonzero shift.
    Singular {
        /// Shift h; negative values allowed.
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        /// Truncation point of the twin-prime-constant Euler product.
        #[arg(long, default_value_t = DEFAULT_TWIN_CUTOFF)]
        cutoff: u64,
    },

    /// Sum of the singular series over ordered pairs of distinct shifts
    /// in [1, h_max], compared with h_max^2.
    Gallagher {
        #[arg(long)]
        h_max: u64,
    },

    /// Residue-class coverage at x = ceil(lambda phi(q) ln q), one row
    /// per modulus.
    Linnik {
        #[arg(long)]
        lambda: f64,
        /// Comma-separated moduli, each >= 3.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        q: Vec<u64>,
    },

    /// Verify that shifted pair counts sum to the second moment of the
    /// per-class prime counts at (x, q).
    Identity {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        q: u64,
    },

    /// Simulate the random prime model over windows of [x, 2x).
    Simulate {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        lambda: f64,
        /// Number of sampled windows. Ignored with --exhaustive.
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every n in [x, 2x) once instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },

    /// Side-by-side model / true-prime / Poisson window statistics.
    Compare {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Domain(primespan::Error),
    Output(io::Error),
}

impl From<primespan::Error> for Failure {
    fn from(e: primespan::Error) -> Failure {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    if let Some(n) = config.threads {
        // Only the first global pool wins; later calls (tests, repeat
        // invocations in one process) keep the existing pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Output(e)) => {
            eprintln!("error: cannot write report: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(config: &RunConfig) -> Result<(), Failure> {
    let body = render(&config.command, config.format)?;
    emit(config.output.as_deref(), &body).map_err(Failure::Output)
}

fn render(command: &Command, format: Format) -> Result<String, primespan::Error> {
    fn format_report<T: Serialize + CsvReport>(report: &T, format: Format) -> String {
        match format {
            Format::Json => to_json(report),
            Format::Csv => report.to_csv(),
        }
    }
    Ok(match command {
        Command::Interval { x, lambda } => format_report(&interval_histogram(*x, *lambda)?, format),
        Command::Coverage { x, lambda } => format_report(&coverage(*x, *lambda)?, format),
        Command::Pairs {
            x,
            h1,
            h2,
            error_constant,
        } => format_report(&pair_report(*x, *h1, *h2, *error_constant)?, format),
        Command::Singular { h, cutoff } => {
            format_report(&singular_series_with(*h, twin_prime_constant(*cutoff)?)?, format)
        }
        Command::Gallagher { h_max } => format_report(&gallagher_pair_sum(*h_max)?, format),
        Command::Linnik { lambda, q } => format_report(&linnik_scan(*lambda, q)?, format),
        Command::Identity { x, q } => format_report(&verify_moment_identity(*x, *q)?, format),
        Command::Simulate {
            x,
            lambda,
            trials,
            seed,
            exhaustive,
        } => {
            let report = if *exhaustive {
                simulate_exhaustive(*x, *lambda, *seed)?
            } else {
                simulate(*x, *lambda, *trials, *seed)?
            };
            format_report(&report, format)
        }
        Command::Compare {
            x,
            lambda,
            trials,
            seed,
        } => format_report(&compare_true_primes(*x, *lambda, *trials, *seed)?, format),
    })
}

fn emit(path: Option<&Path>, body: &str) -> io::Result<()> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
