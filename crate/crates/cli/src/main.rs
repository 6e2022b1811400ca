//! `bsssp`: generate graphs, solve, verify against the reference solver,
//! benchmark and collect bundle statistics.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
//! 3 internal invariant violation.

mod bench;
mod error;
mod gen;
mod input;
mod solve;
mod stats;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::EXIT_USAGE;

#[derive(Parser)]
#[command(name = "bsssp", version, about = "Bundle Dijkstra shortest paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random graph in DIMACS shortest-path format.
    Gen(gen::GenArgs),
    /// Solve single-source shortest paths and print a run report.
    Solve(solve::SolveArgs),
    /// Fuzz the bundle pipeline against the reference solver.
    Verify(verify::VerifyArgs),
    /// Run a size sweep and print one CSV row per run.
    Bench(bench::BenchArgs),
    /// Aggregate bundle-structure statistics across seeds.
    Stats(stats::StatsArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen::run(&a),
        Command::Solve(a) => solve::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Bench(a) => bench::run(&a),
        Command::Stats(a) => stats::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bsssp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
