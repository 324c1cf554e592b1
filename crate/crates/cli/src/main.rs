//! `quadbetti`: bound tables, complete-intersection tables and audits of
//! Betti numbers of quadratic semi-algebraic sets.
//!
//! Exit codes: 0 all PASS, 1 some VIOLATION, 2 usage or input error,
//! 3 INCONCLUSIVE without any VIOLATION.

mod args;
mod audit;
mod emit;
mod system;
mod tables;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quadbetti_core::Verdict;

#[derive(Parser)]
#[command(name = "quadbetti", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-degree Betti bounds for sets defined by s quadratic inequalities in R^k
    Bounds(tables::BoundsArgs),
    /// Total Betti numbers of complex complete intersections
    Ci(tables::CiArgs),
    /// Run the built-in scenario suite
    Verify(verify::VerifyArgs),
    /// Run one audit with explicit parameters
    Audit(Box<audit::AuditArgs>),
}

fn exit_code(verdict: Verdict) -> ExitCode {
    match verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Violation => ExitCode::from(1),
        Verdict::Inconclusive => ExitCode::from(3),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => tables::bounds(&a),
        Command::Ci(a) => tables::ci(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Audit(a) => audit::run(&a),
    };
    match result {
        Ok(v) => exit_code(v),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
