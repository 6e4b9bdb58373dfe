//! Argument definitions for the `pairrank` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairrank::algo::Algorithm;
use pairrank::baselines::McVariant;

#[derive(Parser, Debug)]
#[command(
    name = "pairrank",
    version,
    about = "Rank items from pairwise comparisons via random-walk scoring, \
             with maximum-likelihood and spectral baselines, synthetic \
             benchmark sweeps, and numeric bound checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank the items of a comparison CSV file.
    Rank(RankArgs),
    /// Synthetic sweep of estimation error against k or d.
    Sweep(SweepArgs),
    /// Compare estimator errors against the Cramér-Rao floor.
    Crb(CrbArgs),
    /// Rank stability of algorithms under edge subsampling.
    Robustness(RobustnessArgs),
    /// Numeric verification suites for the spectral machinery.
    Check(CheckArgs),
}

/// Algorithm names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoName {
    Rc,
    #[value(name = "rc_reg")]
    RcReg,
    Mle,
    #[value(name = "mle_reg")]
    MleReg,
    Borda,
    Ratio,
    Mc1,
    Mc2,
    Mc3,
    Mc4,
}

/// Regularization knobs shared by several subcommands.
#[derive(Args, Debug, Clone, Copy, Default)]
pub struct AlgoParams {
    /// Pseudo-count for rc_reg (default 1) or smoothing for ratio (default 0).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Ridge weight for mle_reg (default 0.01).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Teleport weight for mc1..mc4 (default 0.05).
    #[arg(long)]
    pub alpha: Option<f64>,
}

impl AlgoParams {
    /// Resolves a named algorithm with its defaults filled in.
    pub fn resolve(&self, name: AlgoName) -> Algorithm {
        match name {
            AlgoName::Rc => Algorithm::RankCentrality {
                epsilon: self.epsilon.unwrap_or(0.0),
            },
            AlgoName::RcReg => Algorithm::RankCentrality {
                epsilon: self.epsilon.unwrap_or(1.0),
            },
            AlgoName::Mle => Algorithm::Mle {
                lambda: self.lambda.unwrap_or(0.0),
            },
            AlgoName::MleReg => Algorithm::Mle {
                lambda: self.lambda.unwrap_or(0.01),
            },
            AlgoName::Borda => Algorithm::Borda,
            AlgoName::Ratio => Algorithm::RatioMatrix {
                smooth: self.epsilon.unwrap_or(0.0),
            },
            AlgoName::Mc1 => self.markov(McVariant::Mc1),
            AlgoName::Mc2 => self.markov(McVariant::Mc2),
            AlgoName::Mc3 => self.markov(McVariant::Mc3),
            AlgoName::Mc4 => self.markov(McVariant::Mc4),
        }
    }

    fn markov(&self, variant: McVariant) -> Algorithm {
        Algorithm::MarkovChain {
            variant,
            alpha: self.alpha.unwrap_or(0.05),
        }
    }
}

#[derive(Args, Debug)]
pub struct RankArgs {
    /// Comparison CSV (header `item_i,item_j,wins_i,wins_j`).
    #[arg(long)]
    pub input: PathBuf,
    /// Ranking algorithm.
    #[arg(long)]
    pub algo: AlgoName,
    #[command(flatten)]
    pub params: AlgoParams,
    /// Base seed (accepted for interface uniformity; ranking is
    /// deterministic given the data).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write machine-readable output here (.json for JSON, CSV otherwise).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Which parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VaryAxis {
    /// Comparisons per pair.
    K,
    /// Average degree of the random comparison graph.
    D,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Number of items.
    #[arg(long)]
    pub n: usize,
    /// Dynamic range of the synthetic truth scores.
    #[arg(long)]
    pub b: f64,
    /// Varied parameter.
    #[arg(long, value_enum)]
    pub vary: VaryAxis,
    /// Grid of values for the varied parameter, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<f64>,
    /// Value of the parameter held fixed (d when varying k, k when varying d).
    #[arg(long)]
    pub fixed: f64,
    /// Monte-Carlo trials per grid point.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Algorithms to run, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub algos: Vec<AlgoName>,
    #[command(flatten)]
    pub params: AlgoParams,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the results table as CSV here (stdout shows a human table).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CrbArgs {
    #[arg(long)]
    pub n: usize,
    /// Average degree of the random comparison graph.
    #[arg(long)]
    pub d: f64,
    /// Comparisons per pair; a comma-separated grid is allowed.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u64>,
    /// Dynamic range of the synthetic truth scores.
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RobustnessArgs {
    /// Comparison CSV of the full (reference) dataset.
    #[arg(long)]
    pub input: PathBuf,
    /// Edge sampling rates in (0, 1], comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub rates: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub algos: Vec<AlgoName>,
    #[command(flatten)]
    pub params: AlgoParams,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Verification suite names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    /// Detailed balance of the ideal chain.
    Balance,
    /// The spectral-gap inequality.
    Gap,
    /// The Dirichlet-form chain comparison.
    Dirichlet,
    /// Noise-norm scaling and the convergence envelope.
    Perturbation,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
