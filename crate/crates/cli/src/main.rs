//! `jtheta`: evaluate, sample, fit and simulate the Jacobi theta distribution.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliResult;

#[derive(Parser)]
#[command(
    name = "jtheta",
    version,
    about = "The Jacobi theta distribution from the command line"
)]
struct Cli {
    /// Write data to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Suppress all diagnostics; only data is written.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a function of the distribution on a grid.
    Eval(commands::eval::EvalArgs),
    /// Draw variates, one per line.
    Sample(commands::sample::SampleArgs),
    /// Estimate m from a file of values.
    Fit(commands::fit::FitArgs),
    /// Compare the three estimators over many simulated samples.
    Study(commands::study::StudyArgs),
    /// Application scenarios.
    #[command(subcommand)]
    App(commands::app::AppCommand),
}

/// Options shared by every command.
pub struct Globals {
    pub output: Option<PathBuf>,
    pub quiet: bool,
}

impl Globals {
    /// Prints a diagnostic to standard error unless `--quiet`.
    pub fn note(&self, msg: impl std::fmt::Display) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

#[derive(Args, Clone, Copy)]
pub struct SeedArg {
    /// Random seed.
    #[arg(long, env = "JTHETA_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn run(cli: Cli) -> CliResult<()> {
    let g = Globals {
        output: cli.output,
        quiet: cli.quiet,
    };
    match cli.command {
        Command::Eval(a) => commands::eval::run(&g, a),
        Command::Sample(a) => commands::sample::run(&g, a),
        Command::Fit(a) => commands::fit::run(&g, a),
        Command::Study(a) => commands::study::run(&g, a),
        Command::App(a) => commands::app::run(&g, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jtheta: {e}");
            ExitCode::from(e.code())
        }
    }
}
