//! `dephasim`: tables and plot data for a dephasing channel whose flips are
//! correlated by a two-state Markov chain.

mod args;
mod commands;
mod output;
mod sweep;

use args::{Cli, Command};
use clap::error::ErrorKind;
use clap::Parser;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Exit contract: 0 for help/version, 1 for any argument problem.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Capacity(args) => commands::cmd_capacity(args),
        Command::Fidelity(args) => commands::cmd_fidelity(args),
        Command::Verify => commands::cmd_verify(),
        Command::Crossover(args) => commands::cmd_crossover(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}
