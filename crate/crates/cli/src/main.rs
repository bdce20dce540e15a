mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use fracepi_core::Error;

use args::{Cli, Command};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation { .. } | Error::Io { .. } | Error::Domain(_) => EXIT_VALIDATION,
        Error::Numerical(_) | Error::NonFinite { .. } | Error::Negativity { .. } => EXIT_NUMERICAL,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let result = match &cli.command {
        Command::Run(a) => commands::run(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::R0(a) => commands::r0(a),
        Command::Stability(a) => commands::stability(a),
        Command::Verify(a) => match commands::verify(a) {
            Ok(failing) if failing.is_empty() => Ok(()),
            Ok(failing) => {
                eprintln!("failing checks: {}", failing.join(", "));
                return ExitCode::from(EXIT_NUMERICAL);
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
