//! Front end for `swrt`. [`run`] parses arguments, executes one subcommand and
//! returns the process exit code: 0 on success, 1 on invalid input, 2 when a
//! requested cross-check fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod record;

pub use record::OutputRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "swrt", version, about = "SO(3) WRT invariants of Seifert manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate xi_r and tau'_r for one or more manifolds.
    Tau(TauArgs),
    /// General formula against the closed form for X(-2/1,3/1,6/1), odd r in [5, R_MAX].
    TrefTable(TrefArgs),
    /// Integrality verdicts over a corpus and a range of r.
    IntegralityScan(ScanArgs),
    /// Cross-checks on a seeded random corpus.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    /// A single odd level.
    #[arg(long, conflicts_with = "r_range")]
    pub r: Option<usize>,
    /// Odd levels in A..=B, written `A:B`.
    #[arg(long, value_name = "A:B")]
    pub r_range: Option<String>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Manifolds such as `X(-2/1,3/1,6/1)`.
    #[arg(required = true)]
    pub manifolds: Vec<String>,
    #[command(flatten)]
    pub levels: LevelArgs,
    /// Evaluate at zeta^t; defaults to the inverse of 4 mod r.
    #[arg(long)]
    pub t: Option<i64>,
    /// Compare with the plumbing state sum.
    #[arg(long)]
    pub oracle: bool,
    /// Compute the state sum by enumeration (implies --oracle).
    #[arg(long)]
    pub brute: bool,
    /// Term budget for --brute.
    #[arg(long, default_value_t = seifert_wrt::statesum::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Compare with Rozansky's formula where it applies.
    #[arg(long)]
    pub rozansky: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Decimal digits for the numeric embedding.
    #[arg(long, default_value_t = 15)]
    pub precision: u32,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct TrefArgs {
    pub r_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Manifolds to scan; the built-in corpus when empty.
    pub manifolds: Vec<String>,
    #[arg(long, value_name = "A:B", default_value = "3:21")]
    pub r_range: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl From<seifert_wrt::Error> for CliError {
    fn from(e: seifert_wrt::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Tau(a) => commands::tau(&a, out, err),
        Command::TrefTable(a) => commands::tref_table(&a, out),
        Command::IntegralityScan(a) => commands::integrality_scan(&a, out, err),
        Command::Selftest(a) => commands::selftest(&a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let msg = match &e {
                CliError::Invalid(m) => format!("error: {m}"),
                CliError::CheckFailed(m) => format!("cross-check failed: {m}"),
            };
            let _ = writeln!(err, "{msg}");
            e.exit_code()
        }
    }
}
