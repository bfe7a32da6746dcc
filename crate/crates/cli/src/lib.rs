//! Command-line front end for `laminate`: benchmark solves, release
//! inversions, L-curve export and property suites, all writing CSV.

pub mod args;
pub mod commands;
pub mod config;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub use args::{Cli, OUT_ENV};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Argument parsing failed, or `--help`/`--version` was requested.
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error(transparent)]
    Core(#[from] laminate::Error),
    #[error("verification failed: {}", .0.join("; "))]
    Verify(Vec<String>),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad invocations, 1 for anything that failed while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Clap(e) => e.exit_code() as u8,
            CliError::Usage(_) | CliError::Core(laminate::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}

/// The effective command line recorded in every output header.
pub fn command_line(args: &[OsString]) -> String {
    std::iter::once("laminate".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn main_with(args: Vec<OsString>, out: &mut dyn Write) -> Result<(), CliError> {
    let args = config::expand_config(args)?;
    let cli = Cli::try_parse_from(&args)?;
    commands::execute(&cli, &command_line(&args), out)
}
