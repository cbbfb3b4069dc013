use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "f2mq",
    version,
    about = "Parity-counting solver for polynomial systems over GF(2)"
)]
pub struct Cli {
    /// Worker threads for the parity engine; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Ndjson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Parity,
    Decide,
    Search,
    Exhaust,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Parity => "parity",
            Mode::Decide => "decide",
            Mode::Search => "search",
            Mode::Exhaust => "exhaust",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random system in .mq format.
    Gen(GenArgs),
    /// Solve a system in one of four modes.
    Solve(SolveArgs),
    /// Check whether an assignment (bitstring, x1 first) solves a system.
    Verify(VerifyArgs),
    /// Profile the parity engine over a sweep of random instances.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of variables.
    #[arg(short = 'n', long)]
    pub vars: usize,
    /// Degree bound.
    #[arg(short = 'd', long)]
    pub degree: usize,
    /// Number of equations.
    #[arg(short = 'm', long)]
    pub equations: usize,
    /// Adjust constants so a random point is a solution.
    #[arg(long)]
    pub planted: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

/// Engine and solver knobs shared by `solve` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct Tuning {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub kappa0: Option<f64>,
    /// Odd number of trials per recursive node.
    #[arg(long)]
    pub t: Option<usize>,
    /// Change-of-variables iterations for exhaust.
    #[arg(long)]
    pub r: Option<usize>,
    /// Isolation trials per hash size, as a multiple of n.
    #[arg(long, default_value_t = 4)]
    pub vv_c: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Input .mq file; stdin when omitted or "-".
    #[arg(long, short = 'i')]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Cross-check the result against exhaustive enumeration.
    #[arg(long)]
    pub oracle_check: bool,
    /// Largest variable count the cross-check enumerates.
    #[arg(long, default_value_t = f2mq::oracle::DEFAULT_CAP)]
    pub oracle_cap: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub assignment: String,
    #[arg(long, short = 'i')]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Variable counts to sweep.
    #[arg(long, value_delimiter = ',', default_value = "8,10")]
    pub vars: Vec<usize>,
    /// Degrees to sweep.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub degrees: Vec<usize>,
    /// Equations per instance; defaults to n.
    #[arg(long)]
    pub equations: Option<usize>,
    /// Instances per (n, d).
    #[arg(long, default_value_t = 1)]
    pub instances: usize,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Print the level schedule only, without running anything.
    #[arg(long)]
    pub plan_only: bool,
    /// Omit wall-clock time so output is byte-reproducible.
    #[arg(long)]
    pub deterministic: bool,
}
