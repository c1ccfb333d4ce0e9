//! Command-line front end, configuration and file formats for `quantlab-core`.
//!
//! Every subcommand writes one artifact (JSON for reports, CSV for sweeps) and a list of checks.
//! Failed checks are echoed to stderr as JSON lines and turn the exit status to 1; a rejected
//! configuration exits with 2.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod registry;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde_json::json;

use crate::cli::Cli;
use crate::config::ConfigFile;
use crate::error::{CliError, EXIT_FAILURE};

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let command = cli.command.name();
    match run_parsed(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("{}", json!({"status": "error", "command": command, "kind": e.kind(), "message": e.to_string()}));
            e.exit_code()
        }
    }
}

fn run_parsed(cli: &Cli) -> Result<i32, CliError> {
    let command = cli.command.name();
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path, command)?,
        None => ConfigFile::default(),
    };
    let outcome = commands::execute(&cli.command, &config.params)?;
    let text = outcome.artifact.render();
    match config.output.as_ref().or(cli.output.as_ref()) {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    let mut failed = false;
    for c in outcome.failures() {
        failed = true;
        eprintln!("{}", json!({"status": "fail", "command": command, "check": c}));
    }
    Ok(if failed { EXIT_FAILURE } else { 0 })
}
