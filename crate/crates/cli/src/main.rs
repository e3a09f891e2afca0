//! Front end for the relative-angle encoding laboratory: reproduce the
//! reference table, sweep j, evaluate single scenarios, and run the
//! verification suites.
//!
//! Exit codes: 0 success / all checks pass, 1 computation or verification
//! failure, 2 usage error.

use clap::{Parser, Subcommand};

mod args;
mod compute;
mod error;
mod grid;
mod output;
mod reproduce;
mod sweep;
mod verify;

#[derive(Parser)]
#[command(
    name = "relspin",
    version,
    about = "Relative-angle spin encoding: total-spin measurements and Bayesian information gain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute headline quantities and compare against reference values
    Reproduce(reproduce::ReproduceArgs),
    /// Per-spin information gain of both methods across a j range
    SweepJ(sweep::SweepArgs),
    /// Evaluate one scenario and print its information-gain report
    Compute(compute::ComputeArgs),
    /// Run the numerical invariant suites
    Verify(verify::VerifyArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Reproduce(args) => reproduce::run(args),
        Command::SweepJ(args) => sweep::run(args),
        Command::Compute(args) => compute::run(args),
        Command::Verify(args) => verify::run(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
