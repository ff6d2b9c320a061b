//! `alphacap`: α-capacity of discrete memoryless channels from the command
//! line.
//!
//! Data goes to stdout and diagnostics to stderr. Exit status is 0 on
//! success, 2 when a solver stopped at its iteration limit (the result is
//! still printed) and 1 on any input error.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Outcome;

#[derive(Debug, Parser)]
#[command(
    name = "alphacap",
    version,
    about = "Order-alpha channel capacity solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one solver and print a JSON record.
    Capacity(commands::CapacityArgs),
    /// Run every preset configuration over a list of orders.
    Compare(commands::CompareArgs),
    /// Correct-decoding exponent at a given rate.
    Exponent(commands::ExponentArgs),
    /// Print a seeded random channel as CSV.
    GenChannel(commands::GenChannelArgs),
    /// Brute-force grid maximum of the Sibson mutual information.
    Oracle(commands::OracleArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Capacity(a) => commands::capacity(a),
        Command::Compare(a) => commands::compare(a),
        Command::Exponent(a) => commands::exponent(a),
        Command::GenChannel(a) => commands::gen_channel(a),
        Command::Oracle(a) => commands::oracle(a),
    };
    match result {
        Ok(Outcome::Converged) => ExitCode::SUCCESS,
        Ok(Outcome::IterationLimit) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
