use std::io::ErrorKind;
use std::process::ExitCode;

use clap::Parser;
use coupled_tent_cli::args::Cli;
use coupled_tent_cli::{run, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe downstream (`ctent gen | head`) is not a failure
        Err(CliError::Io { source, .. }) if source.kind() == ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ctent: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
