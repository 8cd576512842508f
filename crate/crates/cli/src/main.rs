//! Command-line front end for the walksearch engines.
//!
//! Exit codes: 0 success; 2 invalid arguments; 3 numerical failure
//! (singular system or non-unique stationary distribution); 4 an attack
//! completed cleanly but found no key.

mod attack_cmd;
mod grover_cmd;
mod markov_cmd;
mod qwalk_cmd;
mod util;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use walksearch::Error;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_NOT_FOUND: u8 = 4;

#[derive(Parser)]
#[command(
    name = "walksearch",
    version,
    about = "Random-walk, quantum-walk and Grover search over finite spaces, plus a key-space attack harness",
    after_help = "Exit codes: 0 ok, 2 invalid arguments, 3 numerical failure, 4 attack found no key."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Absorption, hitting-time, stationary and cover-time analyses of the
    /// uniform marked walk.
    Markov(markov_cmd::MarkovArgs),
    /// Position distributions of the discrete Hadamard walk.
    Qwalk(qwalk_cmd::QwalkArgs),
    /// Grover success probabilities and curves.
    Grover(grover_cmd::GroverArgs),
    /// Plan and run key-recovery experiments.
    Attack(attack_cmd::AttackArgs),
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::BudgetExceeded { .. } => EXIT_USAGE,
        Error::NumericalFailure(_) | Error::NonUniqueStationary { .. } => EXIT_NUMERICAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Markov(args) => markov_cmd::run(args).map(|()| true),
        Command::Qwalk(args) => qwalk_cmd::run(args).map(|()| true),
        Command::Grover(args) => grover_cmd::run(args).map(|()| true),
        Command::Attack(args) => attack_cmd::run(args),
    };
    match result {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_NOT_FOUND),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
