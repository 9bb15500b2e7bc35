//! Command-line front end for `selfspec`. Parsing produces a [`RunConfig`];
//! every command is a deterministic function of it.

pub mod args;
pub mod commands;
pub mod config;
pub mod table;

use std::ffi::OsString;

use clap::Parser;

pub use commands::{execute, CliError, Outcome, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
pub use config::{BcSpec, Command, Format, RunConfig, SCHEMA_VERSION};

/// Runs a parsed configuration, writing the table to `--out` or stdout.
/// Returns the process exit code.
pub fn run_config(config: &RunConfig) -> Result<i32, CliError> {
    let outcome = execute(&config.command)?;
    let text = outcome.table.render(config.format);
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(outcome.exit_code)
}

/// Full entry point: parse, run, report errors on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_config(&cli.into_config()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
