mod args;
mod commands;
mod error;
mod io;
mod model;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Digits(a) => commands::digits(a),
        Command::Sample(a) => commands::sample(a),
        Command::SeedsValidate(a) => commands::seeds_validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("benford-fourier: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
