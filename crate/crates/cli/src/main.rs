//! `sensorval`: validate sensor streams, simulate faulty data and work with
//! `.fis` rulebases.
//!
//! Exit status: 0 success, 1 faults reported (or `fis check` warnings),
//! 2 usage or config error, 3 input parse error.

mod error;
mod fis;
mod pca;
mod score;
mod simulate;
mod streams;
mod validate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "sensorval", version, about = "Fuzzy-confidence validation of sensor streams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score, pass or reconstruct every sample and report prolonged faults.
    Validate(validate::Args),
    /// Generate a seeded synthetic stream with injected faults.
    Simulate(simulate::Args),
    /// Inspect, canonicalize or plot `.fis` rulebases.
    #[command(subcommand)]
    Fis(fis::Command),
    /// Precision and recall of reconstructions against fault labels.
    Score(score::Args),
    /// Fit and apply PCA/SPE models for a sensor fusion.
    #[command(subcommand)]
    Pca(pca::Command),
}

/// What a successful command wants the process to exit with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Findings,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Validate(a) => validate::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Fis(c) => fis::run(c),
        Command::Score(a) => score::run(a),
        Command::Pca(c) => pca::run(c),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Findings) => ExitCode::from(1),
        Err(e) => {
            eprintln!("sensorval: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Shorthand for command bodies.
pub type Result<T> = std::result::Result<T, CliError>;
