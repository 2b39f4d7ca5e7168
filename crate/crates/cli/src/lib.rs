//! The `fiscap` command line.
//!
//! Exit status: 0 on success, 1 when a parameter fails validation (or a
//! verification row fails), 2 when `classify --strict` finds no pure-strategy
//! equilibrium, 64 on usage errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};
use commands::execute;

pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] fiscap_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Model(_) | CliError::Io(_) | CliError::Csv(_) => EXIT_VALIDATION,
        }
    }
}

/// Parses `argv`, runs the subcommand and returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            }
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let params = match &cli.global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            cli.params.clone().or(config::parse(&text)?)
        }
        None => cli.params.clone(),
    };
    let outcome = execute(&cli.command, &params)?;
    let text = match cli.global.format {
        Format::Json => output::to_json(&outcome.output.json),
        Format::Csv => output::to_csv(&outcome.output)?,
    };
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(outcome.status.code())
}
