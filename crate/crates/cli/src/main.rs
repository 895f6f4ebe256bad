//! Command-line interface: single-point evaluation, parameter sweeps,
//! figure-data presets and reconciliation runs.
//!
//! Exit codes: 0 on success, 2 on a parameter-domain violation (the message
//! names the offending flag), 3 on an IO failure.

mod commands;
mod opts;

use clap::Parser;

fn main() {
    let cli = opts::Cli::parse();
    if let Err(err) = commands::run(cli) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}

/// CLI failure carrying its process exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    /// A parameter outside its domain (exit 2).
    pub fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    /// A filesystem failure (exit 3).
    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CliError {
            code: 3,
            message: format!("cannot write {}: {err}", path.display()),
        }
    }
}
