//! Command implementations behind the `c2-theta` binary.
//!
//! Every command writes to a caller-supplied sink so it can be driven from
//! tests. Exit codes: 0 success, 1 verification failure or other error,
//! 2 usage error, 3 term budget exceeded.

mod oracle;
mod table;
mod theta;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::netforms::{LevelContext, NetError};
use crate::qscalar::QError;
use crate::webcalc::WebError;

pub use oracle::{cmd_oracle, OracleReport};
pub use table::{cmd_table, table_rows, TableRow};
pub use theta::{cmd_theta, ThetaReport};
pub use verify::{cmd_verify, run_suite, CaseResult, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} cases failed")]
    VerifyFailed { failed: usize, total: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Scalar(#[from] QError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Web(WebError::TermBudget(_)) => 3,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "c2-theta",
    version,
    about = "Theta nets and web reduction for the C2 spider"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one theta net.
    Theta(ThetaArgs),
    /// Write a table of theta values at a level.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate by brute-force web reduction.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    /// Evaluate at q = exp(2 pi i / N).
    #[arg(long = "at-root", value_name = "N", conflicts_with = "q1")]
    pub at_root: Option<u64>,
    /// Only print the q -> 1 limit.
    #[arg(long)]
    pub q1: bool,
    /// Level; implies N = 4k+12 and reports level admissibility.
    #[arg(long = "level", value_name = "K")]
    pub level: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long = "max-sum", value_name = "S")]
    pub max_sum: u32,
    #[arg(long = "level", value_name = "K")]
    pub level: u32,
    /// Root order; must equal 4k+12 if given.
    #[arg(long = "at-root", value_name = "N")]
    pub at_root: Option<u64>,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TableFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Scale of the sweep; each suite has its own default.
    #[arg(long = "max-sum", value_name = "S")]
    pub max_sum: Option<u32>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["a", "web_file"]))]
pub struct OracleArgs {
    #[arg(long, requires_all = ["b", "c"])]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub c: Option<u32>,
    /// JSON web dump of a closed web.
    #[arg(long = "web-file", value_name = "F")]
    pub web_file: Option<PathBuf>,
    #[arg(long = "term-budget", default_value_t = crate::webcalc::DEFAULT_TERM_BUDGET)]
    pub term_budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Level and root order from the flags, checked against `N = 4k+12`.
pub fn resolve_level(
    level: Option<u32>,
    at_root: Option<u64>,
) -> Result<(Option<LevelContext>, Option<u64>), CliError> {
    match (level, at_root) {
        (Some(k), Some(n)) => {
            let ctx = LevelContext::new(k);
            if ctx.order_n() != n {
                return Err(CliError::Usage(format!(
                    "level {k} needs N = {}, got {n}",
                    ctx.order_n()
                )));
            }
            Ok((Some(ctx), Some(n)))
        }
        (Some(k), None) => {
            let ctx = LevelContext::new(k);
            Ok((Some(ctx), Some(ctx.order_n())))
        }
        (None, Some(n)) => {
            if n == 0 || n % 2 == 1 {
                return Err(CliError::Usage(format!(
                    "root order must be a positive even integer, got {n}"
                )));
            }
            Ok((LevelContext::from_order(n), Some(n)))
        }
        (None, None) => Ok((None, None)),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Theta(a) => cmd_theta(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
    }
}

/// Parse `args`, run, and return the process exit code. Errors go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
