use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hql_core::intersect::Family;

use crate::config::OracleArg;

/// Intersection spectra of the Hermitian surface with tangent quadrics, q even.
#[derive(Debug, Parser)]
#[command(name = "hql", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep quadrics and check the observed size spectrum.
    Verify(VerifyArgs),
    /// Classify one quadric and report its intersection size.
    Classify(ClassifyArgs),
    /// Search for ovoid or permutable configurations.
    Extremal(ExtremalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
    Normalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ovoid,
    Permutable,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Order of the base field GF(q), a power of two.
    #[arg(long, env = "HQL_Q")]
    pub q: u64,
    #[arg(long, value_enum, default_value = "exhaustive", env = "HQL_MODE")]
    pub mode: Mode,
    /// Number of random instances (random mode).
    #[arg(long, default_value_t = 10_000, env = "HQL_SAMPLES")]
    pub samples: u64,
    #[arg(long, default_value_t = 0, env = "HQL_SEED")]
    pub seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0, env = "HQL_WORKERS")]
    pub workers: usize,
    /// Output file (default: stdout).
    #[arg(long, env = "HQL_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", env = "HQL_FORMAT")]
    pub format: Format,
    /// `all`, `off` or `sample:N` (default: all for q = 2, sample:10000 otherwise).
    #[arg(long, env = "HQL_ORACLE")]
    pub oracle: Option<OracleArg>,
    /// Normalized families to sweep (default: all).
    #[arg(long = "family", value_delimiter = ',', env = "HQL_FAMILY")]
    pub families: Vec<Family>,
    /// Random (d, e, f) per (a, b, c) in normalized mode (default: all for q <= 4, 64 for larger q).
    #[arg(long, env = "HQL_PER_HEAD")]
    pub per_head: Option<u64>,
    /// Verify every ovoid / permutable instance met during the sweep.
    #[arg(long, env = "HQL_EXTREMAL_CHECKS")]
    pub extremal_checks: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, env = "HQL_Q")]
    pub q: u64,
    /// Six coefficients a,b,c,d,e,f, each `x0+e*x1` in bits or a decimal code.
    #[arg(long)]
    pub coeffs: String,
    /// Skip the brute-force count.
    #[arg(long)]
    pub no_oracle: bool,
    #[arg(long, value_enum, default_value = "text", env = "HQL_FORMAT")]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(long, env = "HQL_Q")]
    pub q: u64,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Stop after this many witnesses.
    #[arg(long, default_value_t = 1)]
    pub limit: usize,
    #[arg(long, value_enum, default_value = "text", env = "HQL_FORMAT")]
    pub format: TextFormat,
}
