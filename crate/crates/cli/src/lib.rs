//! Command-line front end for `permqm`: batch dominance experiments, time
//! traces with SVG charts, spectra, Monte Carlo histograms and the oracle
//! checks.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod svg;
pub mod verify;

pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, CliResult};

use std::io::Write;

/// Resolves the configuration and runs the command; returns the exit code.
pub fn main_with(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = RunConfig::from_cli(cli).and_then(|cfg| commands::run(&cfg, stdout));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "permqm {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}
