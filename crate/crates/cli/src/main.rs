//! `pn-spanner`: build proximal-navigation graphs, check their properties and
//! measure stretch.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails (the
//! report names a witness), 2 on bad arguments or unreadable input.

mod commands;
mod input;
mod sweep;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use commands::{BuildArgs, CheckArgs, CounterexampleCmd, GenKind, Outcome, RouteArgs, StretchArgs};
use sweep::SweepArgs;

#[derive(Parser, Debug)]
#[command(
    name = "pn-spanner",
    version,
    about = "Proximal-navigation graph workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seeded random point set.
    #[command(subcommand)]
    Gen(GenKind),
    /// Build a graph file.
    Build(BuildArgs),
    /// Check the metric axioms, the PN property or the lune property.
    Check(CheckArgs),
    /// Greedy route between two vertices.
    Route(RouteArgs),
    /// Stretch factor of a graph over its space.
    Stretch(StretchArgs),
    /// Emit a CSV sweep.
    Sweep(SweepArgs),
    /// Counterexample family tools.
    #[command(subcommand)]
    Counterexample(CounterexampleCmd),
}

const USAGE: u8 = 2;

/// Applies `PN_SPANNER_THREADS` to the global worker pool.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PN_SPANNER_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        anyhow::anyhow!("PN_SPANNER_THREADS must be a positive integer, got {raw:?}")
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    configure_threads()?;
    match &cli.command {
        Command::Gen(kind) => commands::gen(kind),
        Command::Build(args) => commands::build(args),
        Command::Check(args) => commands::check(args),
        Command::Route(args) => commands::route(args),
        Command::Stretch(args) => commands::stretch_cmd(args),
        Command::Sweep(args) => sweep::sweep(args).map(|()| Outcome {
            text: String::new(),
            passed: true,
        }),
        Command::Counterexample(cmd) => commands::counterexample(cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
