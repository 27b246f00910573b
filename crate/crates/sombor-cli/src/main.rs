//! Command-line front end: sweep random-graph index ensembles, check size
//! collapse, correlate scaled indices with eigenvector entropy, and print
//! dense-limit predictions.

mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Error split mirroring the exit-code contract: 2 for configuration
/// problems detected before computation, 3 for runtime/numeric/IO failures.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }
}

impl From<sombor::Error> for CliError {
    fn from(err: sombor::Error) -> Self {
        match err {
            sombor::Error::InvalidParameter(_)
            | sombor::Error::InvalidGraph(_)
            | sombor::Error::Parse(_) => CliError::Config(err.to_string()),
            sombor::Error::Numeric(_) | sombor::Error::UndefinedCorrelation(_) => {
                CliError::Runtime(err.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o failure: {err}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Runtime(format!("csv failure: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "sombor",
    version,
    about = "Sombor-family indices on random graph ensembles"
)]
struct Cli {
    /// Cap the worker thread pool (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a control grid, averaging indices over replica ensembles
    Sweep(SweepArgs),
    /// Measure how well normalized curves from several runs coincide
    Collapse(CollapseArgs),
    /// Correlate scaled complexity indices with eigenvector entropy
    Correlate(CorrelateArgs),
    /// Print dense-limit predictions without sampling
    Predict(PredictArgs),
}

/// Flags shared by every subcommand; a JSON config file can provide any of
/// them, with explicit flags taking precedence.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Graph model: er, rg, or br
    #[arg(long)]
    model: Option<String>,

    /// Vertex count (er/rg)
    #[arg(long)]
    n: Option<usize>,

    /// First set size (br)
    #[arg(long)]
    n1: Option<usize>,

    /// Second set size (br)
    #[arg(long)]
    n2: Option<usize>,

    /// Grid over mean degree or control parameter:
    /// "[k:|control:]v1,v2,..." or "[k:|control:]log:lo:hi:count"
    #[arg(long)]
    grid: Option<String>,

    /// Named indices: sombor, msombor, bsombor, asombor, sumconn,
    /// complexity, ka (comma-separated or repeated)
    #[arg(long = "index", value_delimiter = ',')]
    index: Vec<String>,

    /// Alpha exponents for parametric indices (asombor, complexity, ka)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Vec<f64>,

    /// Beta exponent (ka, sumconn)
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,

    /// Replicas per grid point (default: min(ceil(1e7 / n), 2000))
    #[arg(long)]
    replicas: Option<usize>,

    /// Master seed (default 1)
    #[arg(long)]
    seed: Option<u64>,

    /// Output file
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format: csv or json (default: by extension, else csv)
    #[arg(long)]
    format: Option<String>,

    /// JSON config file providing defaults for any flag
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct CollapseArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Completed result files (csv or json) to compare; at least two
    #[arg(long, value_delimiter = ',')]
    inputs: Vec<PathBuf>,

    /// Inline plan: run the sweep here for these sizes (n for er/rg,
    /// per-set size for br) instead of loading files
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,

    /// Pass/fail threshold on the collapse distance
    #[arg(long)]
    threshold: Option<f64>,

    /// Optional merged-curve CSV
    #[arg(long)]
    merged: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CorrelateArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Spectral replicas per grid point (default: index replicas / 10,
    /// diagonalization being the expensive step)
    #[arg(long)]
    spectral_replicas: Option<usize>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    // die quietly when stdout closes mid-report (piping into head and the
    // like) instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: failed to configure thread pool: {err}");
            return ExitCode::from(3);
        }
    }
    let outcome = match cli.command {
        Command::Sweep(args) => run::sweep(args.common),
        Command::Collapse(args) => run::collapse(
            args.common,
            args.inputs,
            args.sizes,
            args.threshold,
            args.merged,
        ),
        Command::Correlate(args) => run::correlate(args.common, args.spectral_replicas),
        Command::Predict(args) => run::predict(args.common),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
