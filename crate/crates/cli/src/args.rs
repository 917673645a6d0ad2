use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Parser)]
#[command(
    name = "glrmc",
    version,
    about = "Feasibility and rank bounds for low-rank completion of zero/star/query patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a completion of rank at most n-k exists.
    Check(CheckArgs),
    /// Bracket the generic minimum completion rank.
    Bounds(PatternArgs),
    /// Search for completions numerically over GF(p).
    Oracle(OracleArgs),
    /// Random-pattern sweep over a density grid, as CSV.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Enumerate when the candidate count fits the budget, else sample.
    Auto,
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// `u64` or the word `random`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

impl std::str::FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("random") {
            return Ok(SeedArg::Random);
        }
        s.parse()
            .map(SeedArg::Fixed)
            .map_err(|_| format!("expected an unsigned integer or 'random', got '{s}'"))
    }
}

impl std::fmt::Display for SeedArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedArg::Fixed(s) => write!(f, "{s}"),
            SeedArg::Random => f.write_str("random"),
        }
    }
}

impl SeedArg {
    pub fn resolve(self) -> u64 {
        match self {
            SeedArg::Fixed(s) => s,
            SeedArg::Random => glrmc_core::oracle::random_seed(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Bases sampled per rank-deficiency-one test.
    #[arg(long = "tm", default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    pub t_m: u64,
    /// Row subsets sampled per necessary-condition test.
    #[arg(long = "tbar", default_value_t = 110, value_parser = clap::value_parser!(u64).range(1..))]
    pub t_bar: u64,
    /// Bases sampled per sufficient-condition test.
    #[arg(long = "that", default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub t_hat: u64,
    /// Base seed, or `random` for a fresh one.
    #[arg(long, default_value_t = SeedArg::Fixed(DEFAULT_SEED))]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest candidate count enumerated in auto mode.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Work on the transposed pattern (needed when there are more rows than columns).
    #[arg(long)]
    pub transpose: bool,
    /// Report wall-clock time (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PatternArgs {
    pub pattern: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Treat an inconclusive sampled inner test as a failure.
    #[arg(long)]
    pub miss_is_failure: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(required_unless_present = "verify_witness")]
    pub pattern: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Re-verify the witness or counterexample recorded in a JSON report.
    #[arg(long, value_name = "REPORT", conflicts_with = "pattern")]
    pub verify_witness: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    pub pattern: PathBuf,
    /// Rank deficiency; without --k or --rank the minimum rank is searched.
    #[arg(long, conflicts_with = "rank")]
    pub k: Option<usize>,
    /// Target rank, as an alternative to --k.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = glrmc_core::oracle::DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub n: usize,
    /// Columns; defaults to n.
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma-separated fractions of `*` entries.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
    pub densities: Vec<f64>,
    /// Patterns per density.
    #[arg(long, default_value_t = 20)]
    pub patterns: usize,
    /// Fraction of the non-`*` entries that are fixed zeros instead of missing.
    #[arg(long, default_value_t = 0.0)]
    pub zero_fraction: f64,
    /// Also compute the oracle minimum rank when every candidate count fits --budget.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = glrmc_core::oracle::DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}
