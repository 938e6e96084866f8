//! The `shadowcf` command line: argument definitions and command dispatch.
//!
//! Every command writes to a caller-supplied sink so it can be driven from
//! tests as well as from `main`.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod stream;
pub mod svg;
pub mod verify;

/// Exit status for the process.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVARIANT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Invariant(String),

    #[error("{0}")]
    NotConverged(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Library(#[from] shadowcf::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::NotConverged(_) => EXIT_NOT_CONVERGED,
            CliError::Io(_) | CliError::Library(_) => EXIT_INVARIANT,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "shadowcf",
    version,
    about = "Shadows of numbers through supersymmetric continued fractions",
    long_about = "Shadows of numbers through supersymmetric continued fractions.\n\n\
                  Set SHADOWCF_THREADS to fix the worker thread count."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical value, even/odd/Farey shadows and vectors of a rational or an expansion
    Shadow(ShadowArgs),
    /// CSV of shadows for every reduced p/q in a range
    Scan(ScanArgs),
    /// Convergent shadows of an infinite expansion, as CSV
    Converge(ConvergeArgs),
    /// Dump of the shadowed Farey tree
    Tree(TreeArgs),
    /// Run an invariant suite
    Verify(VerifyArgs),
    /// Iterate the shadow map x -> (x)_S on an infinite expansion
    Iterate(IterateArgs),
}

#[derive(Debug, clap::Args)]
pub struct ShadowArgs {
    /// `p/q`, an integer, or a coefficient list such as `[2,1,1]` or `2,1,1`
    pub input: String,
    /// Decimal places
    #[arg(long, default_value_t = 12)]
    pub digits: usize,
    /// Search depth for the Farey shadow
    #[arg(long, default_value_t = 64)]
    pub fs_depth: usize,
    /// Print ring elements with ASCII names instead of ξ and η
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Debug, clap::Args)]
pub struct ScanArgs {
    /// Largest denominator
    #[arg(long)]
    pub qmax: u64,
    /// Lower end of the range (inclusive)
    #[arg(long, default_value = "1")]
    pub lo: String,
    /// Upper end of the range (inclusive)
    #[arg(long, default_value = "2")]
    pub hi: String,
    /// Also compute Farey shadows, searching this deep
    #[arg(long)]
    pub fs_depth: Option<usize>,
    /// Decimal places in the value column
    #[arg(long, default_value_t = 12)]
    pub digits: usize,
    /// Write an SVG scatter plot of the shadows here
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ConvergeArgs {
    /// `golden`, `silver`, `periodic:a1,a2,..;b1,b2,..` or `file:PATH`
    pub stream: String,
    /// Stop once successive shadows differ by less than this
    #[arg(long, default_value = "1e-12")]
    pub tol: String,
    /// Give up after this many convergents
    #[arg(long, default_value_t = 200)]
    pub max_terms: usize,
    /// Decimal places
    #[arg(long, default_value_t = 12)]
    pub digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, clap::Args)]
pub struct TreeArgs {
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
    pub format: TreeFormat,
    /// Largest depth accepted
    #[arg(long, default_value_t = 12)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Ring,
    Group,
    Continuants,
    Shadows,
    Farey,
    Conjectures,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Debug, clap::Args)]
pub struct IterateArgs {
    /// Starting expansion, as for `converge`
    pub stream: String,
    /// Number of times to apply the shadow map
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value = "1e-12")]
    pub tol: String,
    #[arg(long, default_value_t = 400)]
    pub max_terms: usize,
    #[arg(long, default_value_t = 12)]
    pub digits: usize,
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Shadow(a) => commands::shadow(a, out),
        Command::Scan(a) => commands::scan(a, out),
        Command::Converge(a) => commands::converge(a, out),
        Command::Tree(a) => commands::tree(a, out),
        Command::Verify(a) => verify::run(a.suite, out),
        Command::Iterate(a) => commands::iterate(a, out),
    }
}

/// Sizes the global rayon pool from `SHADOWCF_THREADS`, if set.
pub fn configure_threads() -> CliResult {
    let Ok(value) = std::env::var("SHADOWCF_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("SHADOWCF_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("cannot size the thread pool: {e}")))
}
