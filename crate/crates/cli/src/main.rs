mod env_cmds;
mod error;
mod expr;
mod format;
mod plot;
mod solve;
mod target;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliResult;

/// Fractional iterates of functions and numerical functional roots.
#[derive(Parser)]
#[command(name = "halfexp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the super-logarithm series and write it to a file.
    Prepare(env_cmds::PrepareArgs),
    /// Evaluate slog, tetration, an iterate or a closed form at one point.
    Eval(env_cmds::EvalArgs),
    /// Run a functional-root solver and write result, history and manifest.
    Solve(solve::SolveArgs),
    /// Re-run a solver from its manifest.
    Replay(solve::ReplayArgs),
    /// Write CSV data behind overlay, residual and loss plots.
    Plotdata(plot::PlotArgs),
    /// Run the invariant checks and print a pass/fail table.
    Verify(verify::VerifyArgs),
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Prepare(a) => env_cmds::prepare(&a),
        Command::Eval(a) => env_cmds::eval(&a),
        Command::Solve(a) => solve::solve(&a),
        Command::Replay(a) => solve::replay(&a),
        Command::Plotdata(a) => plot::plotdata(&a),
        Command::Verify(a) => verify::verify(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
