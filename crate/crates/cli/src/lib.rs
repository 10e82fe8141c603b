//! Command-line front end for the `coupled-tent` generators and experiments.
//!
//! Data goes to `--output` or stdout, the configuration echo and timings to
//! stderr.

pub mod args;
pub mod commands;
pub mod error;
pub mod table;

use args::{Cli, Command};
pub use error::CliError;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Density(a) => commands::density(a),
        Command::Corr(a) => commands::corr(a),
        Command::Autocorr(a) => commands::autocorr(a),
        Command::Seedscan(a) => commands::seedscan(a),
        Command::Cycle(a) => commands::cycle(a),
        Command::Bench(a) => commands::bench(a),
    }
}
