use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "entropic", version, about = "Check entropic inequalities on density matrices and tomograms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random density matrix (Hilbert–Schmidt / Ginibre ensemble).
    Sample(SampleArgs),
    /// Run every inequality check on one input state.
    Check(CheckArgs),
    /// Run the checks over an ensemble of random states.
    Sweep(SweepArgs),
    /// Minimize the marginal entropy sum over global unitaries.
    Minimize(MinimizeArgs),
    /// Compute a tomogram and its entropy table.
    Tomogram(TomogramArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    Linear,
    Spin,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Base seed; per-trial seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Entropy index; repeat for several values.
    #[arg(long = "q", default_values_t = vec![1.0, 1.5, 2.0, 3.0])]
    pub q: Vec<f64>,
    /// Restrict to one bipartition `n m`. A product larger than the input
    /// dimension zero-pads the state.
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    pub shape: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub dim: usize,
    /// Rank of the Ginibre factor; defaults to full rank.
    #[arg(long)]
    pub rank: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub grid: Grid,
    /// Haar unitaries drawn for the tomographic check.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct MinimizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    pub shape: Option<Vec<usize>>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct TomogramArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// `identity`, `haar` (seeded by --seed), or a path to a unitary matrix JSON file.
    #[arg(long, default_value = "identity")]
    pub unitary: String,
    #[arg(long, value_enum, default_value_t = Labels::Linear)]
    pub labels: Labels,
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub common: Common,
}
