//! Command-line front end for the `hql` tool.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

use args::{Cli, Command};

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Classify(a) => commands::classify(a),
        Command::Extremal(a) => commands::extremal(a),
    }
}
