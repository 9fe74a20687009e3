//! `galelab`: batch front-end over experiment documents.
//!
//! Exit status: 0 ok, 1 violation or anomaly, 2 parse or configuration
//! error, 3 runtime error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use galelab::GaleError;

#[derive(Parser, Debug)]
#[command(name = "galelab", version, about = "Exact experiments with gales, constructors and dimension estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the gale condition exactly at every node up to a depth.
    Validate(Common),
    /// CSV of gale values along a source or a constructor run.
    Trace(Common),
    /// Bracket the dimension of the source under the family.
    Estimate(Common),
    /// Census of small circuits with the counting-bound check.
    Circuits(CircuitArgs),
    /// Seeded property sweeps over random supergale tables.
    Check(CheckArgs),
}

/// Flags shared by the document-driven commands; each overrides the document.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_name = "PATH")]
    pub spec: PathBuf,
    #[arg(long, value_name = "N")]
    pub depth: Option<usize>,
    #[arg(long = "threshold-log2", value_name = "T")]
    pub threshold_log2: Option<i64>,
    #[arg(long, value_name = "P")]
    pub precision: Option<String>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Run every step on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CircuitArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "t-max", default_value_t = 6)]
    pub t_max: usize,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub tables: usize,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long)]
    pub sequential: bool,
}

/// Outcome of a command that ran to completion.
pub enum Verdict {
    Ok,
    Violation,
}

#[derive(Debug)]
pub enum Failure {
    Lab(GaleError),
    Io(String),
}

impl From<GaleError> for Failure {
    fn from(e: GaleError) -> Self {
        Failure::Lab(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(e: &Failure) -> u8 {
    match e {
        Failure::Lab(
            GaleError::Description(_)
            | GaleError::InvalidParameter(_)
            | GaleError::ExponentOutOfRange { .. }
            | GaleError::NotPrefixSet { .. }
            | GaleError::Mismatch(_),
        ) => 2,
        Failure::Lab(GaleError::GridAnomaly(_)) => 1,
        Failure::Lab(_) | Failure::Io(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(c) => commands::validate(c),
        Command::Trace(c) => commands::trace(c),
        Command::Estimate(c) => commands::estimate(c),
        Command::Circuits(c) => commands::circuits(c),
        Command::Check(c) => commands::check(c),
    };
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(1),
        Err(e) => {
            match &e {
                Failure::Lab(err) => eprintln!("error: {err}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
