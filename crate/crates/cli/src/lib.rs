//! Command-line front end: argument parsing, the run loop and exit codes.

pub mod commands;
pub mod output;
pub mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqdist_core::{Family, PointSet};

pub use record::{CompareRow, Parameters, Results, RunRecord, SCHEMA_VERSION};

/// Default largest group size for closed-form integration.
pub const EXACT_CAP: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "eqdist",
    version,
    about = "Distribution of the number of internal equilibria in random d-player two-strategy games"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "EQDIST_THREADS")]
    pub threads: Option<usize>,

    /// More log output on stderr; repeat for debug detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the distribution by sampling payoff tables.
    Sample(SampleArgs),
    /// Integrate the closed-form root densities.
    Exact(ExactArgs),
    /// Tabulate sign-change probabilities.
    Signs(SignsArgs),
    /// Compare every method for d = 2..D.
    Compare(CompareArgs),
    /// Bounds implied by Descartes' rule of signs.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Gaussian,
    UniformBeta,
    UniformPayoffs,
}

impl From<DistArg> for Family {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Gaussian => Family::Gaussian,
            DistArg::UniformBeta => Family::UniformBeta,
            DistArg::UniformPayoffs => Family::UniformPayoffs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PointSetArg {
    Random,
    Kronecker,
}

impl From<PointSetArg> for PointSet {
    fn from(p: PointSetArg) -> Self {
        match p {
            PointSetArg::Random => PointSet::Random,
            PointSetArg::Kronecker => PointSet::Kronecker,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignMethodArg {
    Symmetric,
    Recursive,
    Explicit,
    Oracle,
    All,
}

/// Output destination and encoding, shared by every command.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Group size d.
    #[arg(long)]
    pub players: usize,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub dist: DistArg,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Random seed; drawn from the OS and logged when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub players: usize,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub dist: DistArg,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Integration points per configuration (default: 10^6 for d <= 3, 10^7 above).
    #[arg(long)]
    pub points: Option<u64>,
    #[arg(long, value_enum, default_value = "random")]
    pub point_set: PointSetArg,
    /// Largest group size accepted; the cost grows steeply with d.
    #[arg(long, default_value_t = EXACT_CAP)]
    pub max_players: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SignsArgs {
    /// Largest number of sign slots n; rows 0..=n are written.
    #[arg(long)]
    pub n: usize,
    /// Probability that a coefficient is positive.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value = "recursive")]
    pub method: SignMethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Largest group size D.
    #[arg(long)]
    pub players_max: usize,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub dist: DistArg,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Integration points per configuration (default as for `exact`).
    #[arg(long)]
    pub points: Option<u64>,
    /// Largest group size that gets a closed-form column.
    #[arg(long, default_value_t = EXACT_CAP)]
    pub exact_max_players: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub players: usize,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failures, each with its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<eqdist_core::Error> for CliError {
    fn from(e: eqdist_core::Error) -> Self {
        use eqdist_core::Error as E;
        match e {
            E::Domain(_) | E::InvalidParameter(_) | E::TooLarge { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_logging(cli.verbose);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .try_init();
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    pool.install(|| match cli.command {
        Command::Sample(a) => commands::sample(&a, threads),
        Command::Exact(a) => commands::exact(&a, threads),
        Command::Signs(a) => commands::signs(&a, threads),
        Command::Compare(a) => commands::compare(&a, threads),
        Command::Bounds(a) => commands::bounds(&a, threads),
    })
}
