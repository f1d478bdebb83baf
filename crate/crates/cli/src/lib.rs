//! Batch driver for the unitary-subgroup computations: argument parsing,
//! row assembly, and report rendering. The binary entry point is a thin
//! wrapper over [`run_from`].

pub mod commands;
pub mod config;
pub mod output;

use anyhow::Result;
use clap::Parser;

use config::{Cli, Command};

/// Parses the given argument list and runs the selected subcommand,
/// returning the process exit code.
pub fn run_from<I, T>(args: I) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    match &cli.command {
        Command::Orders(args) => commands::cmd_orders(args),
        Command::Predict(args) => commands::cmd_predict(args),
        Command::Verify(args) => commands::cmd_verify(args),
        Command::Report(args) => commands::cmd_report(args),
    }
}
