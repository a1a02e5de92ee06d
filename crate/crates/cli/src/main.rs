//! `tppforge` — search finite groups for triple product property triples,
//! plan sharded runs, screen rank-bound candidates, and verify triples by
//! exact group-algebra embedding.
//!
//! Exit codes: 0 found/completed, 1 exhausted with nothing found (or a
//! failed verification), 2 invalid input, 3 infeasible size.

mod commands;
mod report;
mod source;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "tppforge", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search a group for basic <m,m,m> TPP triples.
    Search(commands::search::SearchArgs),
    /// Write a shard manifest partitioning the first-row space.
    ShardPlan(commands::shard_plan::ShardPlanArgs),
    /// Screen a candidate data file: rank bounds and classification.
    Screen(commands::screen::ScreenArgs),
    /// Verify a triple by embedding random integer matrix products.
    Verify(commands::verify::VerifyArgs),
    /// Inspect, validate or emit Cayley table files.
    #[command(subcommand)]
    Group(commands::group::GroupCmd),
}

/// Errors carry the exit code they map to.
pub enum CliError {
    Invalid(String),
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Infeasible(m) => m,
        }
    }
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub type CliResult = Result<u8, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Search(args) => commands::search::run(args),
        Command::ShardPlan(args) => commands::shard_plan::run(args),
        Command::Screen(args) => commands::screen::run(args),
        Command::Verify(args) => commands::verify::run(args),
        Command::Group(cmd) => commands::group::run(cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
