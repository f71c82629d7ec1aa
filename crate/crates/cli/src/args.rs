//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dephasim",
    version,
    about = "Dephasing channel with Markov memory: capacity, code error rates, verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Quantum capacity, per sweep point.
    Capacity(CapacityArgs),
    /// Transmission error probability of the coding schemes.
    Fidelity(FidelityArgs),
    /// Run the library's invariant checks and report each outcome.
    Verify,
    /// Memory thresholds where the two-qubit scheme starts to win.
    Crossover(CrossoverArgs),
}

/// Where the channel is evaluated: one parameter may be swept while the
/// other is held fixed, or both may be fixed for a single row.
#[derive(Args)]
pub struct PointArgs {
    /// Probability that one channel use transmits unflipped.
    #[arg(long)]
    pub p0: Option<f64>,
    /// Memory factor: 0 is independent noise, 1 repeats the last outcome.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Swept parameter as `name:start:stop:points` with name `p0` or `mu`.
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct FidelityArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Comma-separated codes to include.
    #[arg(long, value_delimiter = ',', default_value = "uncoded,c1,c2")]
    pub codes: Vec<String>,
    /// Comma-separated evaluation methods.
    #[arg(long, value_delimiter = ',', default_value = "closed")]
    pub method: Vec<Method>,
    /// Monte Carlo samples per sweep point.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Monte Carlo base seed; sweep row i uses seed + i. Required with `mc`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Preset: p0 = 0.999, mu swept over [0,1] with 201 points, all three
    /// codes, closed-form method.
    #[arg(long, conflicts_with_all = ["p0", "mu", "sweep", "codes", "method"])]
    pub figure1: bool,
}

#[derive(Args)]
pub struct CrossoverArgs {
    /// Identity probability at which to locate the thresholds.
    #[arg(long, default_value_t = 0.999)]
    pub p0: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed-form expression.
    Closed,
    /// Exact enumeration over all error sequences.
    Exact,
    /// Seeded Monte Carlo estimate; adds a standard-error column.
    Mc,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Exact => "exact",
            Method::Mc => "mc",
        }
    }
}
