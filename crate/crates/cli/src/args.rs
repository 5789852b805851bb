use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "mqw", version, about = "Möbius quantum walk on a cycle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position distribution at every step t = 0..=T
    Evolve,
    /// Limiting distribution of the time-averaged walk
    Limdist,
    /// Eigenphases of every momentum block
    Spectrum,
    /// Distance to the limit and its spectral bound over time
    Mixing,
    /// Run the cross-oracle verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    /// Perturb the coin so that it is no longer unitary (exercises the validation path)
    #[arg(long)]
    pub corrupt_coin: bool,
}

/// Flags shared by every subcommand. Each one overrides the same key in `--config`.
#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Number of nodes N on the cycle
    #[arg(long, global = true)]
    pub nodes: Option<usize>,

    /// Möbius factor α (θ = 2πα/N)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Initial basis state as s,r,j
    #[arg(long, global = true, value_name = "S,R,J")]
    pub init: Option<String>,

    /// Number of steps T (averaging window for limdist, scan length for mixing)
    #[arg(short = 'T', long = "steps", global = true)]
    pub steps: Option<u64>,

    /// Mixing threshold ε
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,

    /// Limiting-distribution method
    #[arg(long, global = true, value_enum)]
    pub method: Option<Method>,

    /// Output file; standard output when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for verify
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// JSON file with any of the above keys
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Empirical,
    General,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}
