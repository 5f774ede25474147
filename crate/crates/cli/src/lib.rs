//! Command-line front end for the `dioph` library.
//!
//! [`run_with`] parses an argument vector, dispatches to the library and
//! writes the report; the returned value is the process exit code:
//! `0` for SOLVED or NO_SOLUTION (and successful auxiliary commands), `2`
//! when the answer is unknown, undecidable or unimplemented, and `1` for
//! usage, parse and fact-file errors.

pub mod commands;
pub mod solve;
pub mod verdict;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use dioph::kbase::{FactFileError, KnowledgeBase, Problem, Status};
use dioph::linsolve::LinsolveError;
use dioph::poly::ParseError;
use dioph::reduce::ReduceError;

use crate::solve::{SolveDomain, SolveOptions};
use crate::verdict::{TextCell, TextVerdict};

/// Environment variable naming a fact file that replaces the built-in one.
pub const FACTS_ENV: &str = "DIOPH_FACTS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("fact file {path}: {source}")]
    Facts { path: PathBuf, source: FactFileError },
    #[error(transparent)]
    Linear(#[from] LinsolveError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("{0}")]
    Usage(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EqDomain {
    #[value(name = "N", alias = "n")]
    N,
    #[value(name = "Z", alias = "z")]
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridDomain {
    #[value(name = "N", alias = "n")]
    N,
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Naturals to integers (three squares substitution).
    N2z,
    /// Integers to naturals (sign variants).
    Z2n,
}

#[derive(Debug, Parser)]
#[command(name = "dioph", version, about = "Decide and solve small Diophantine equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide solvability of `<poly> = 0` and report a witness when one exists.
    Solve {
        #[arg(long, value_enum, default_value = "Z")]
        domain: EqDomain,
        /// Box radius for a bounded search when no complete procedure applies.
        #[arg(long, value_name = "R")]
        probe: Option<u64>,
        /// Cross-check the verdict against the box oracle of radius R.
        #[arg(long, value_name = "R")]
        verify: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Look up the decidability status of a grid cell.
    Status {
        #[arg(long, value_enum)]
        domain: GridDomain,
        #[arg(long)]
        degree: BigUint,
        #[arg(long)]
        vars: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduced polynomial(s) between the natural and integer problems.
    Reduce {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Sums of three cubes.
    Cubes {
        #[command(subcommand)]
        command: CubesCommand,
    },
    /// Frobenius data of a list of positive generators.
    Frobenius {
        #[arg(required = true)]
        generators: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum CubesCommand {
    /// Search x^3 + y^3 + z^3 = k with min(|x|,|y|,|z|) <= bound.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        k: BigInt,
        #[arg(long)]
        bound: u64,
    },
    /// Search every k in 1..=kmax.
    Survey {
        #[arg(long)]
        kmax: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
}

fn knowledge_base() -> Result<KnowledgeBase, CliError> {
    match std::env::var_os(FACTS_ENV) {
        Some(path) => {
            let path = PathBuf::from(path);
            KnowledgeBase::from_path(&path).map_err(|source| CliError::Facts { path, source })
        }
        None => Ok(KnowledgeBase::builtin()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}

fn execute(cli: Cli) -> Result<(String, i32), CliError> {
    match cli.command {
        Command::Solve {
            domain,
            probe,
            verify,
            json,
            poly,
        } => {
            let kb = knowledge_base()?;
            let domain = match domain {
                EqDomain::N => SolveDomain::N,
                EqDomain::Z => SolveDomain::Z,
            };
            let sol = solve::solve(&kb, &poly, domain, &SolveOptions { probe, verify })?;
            let code = sol.verdict.status.exit_code();
            let text = if json {
                to_json(&sol.verdict)
            } else {
                TextVerdict {
                    verdict: &sol.verdict,
                    label: &sol.cell,
                }
                .to_string()
            };
            Ok((text, code))
        }
        Command::Status {
            domain,
            degree,
            vars,
            json,
        } => {
            let kb = knowledge_base()?;
            let problem = match domain {
                GridDomain::N => Problem::OverN,
                GridDomain::Z => Problem::OverZ,
                GridDomain::Q => Problem::OverQ,
            };
            let (cell, label) = commands::status(&kb, problem, &degree, vars);
            let code = if cell.grid.status == Status::Decidable.to_string() { 0 } else { 2 };
            let text = if json {
                to_json(&cell)
            } else {
                TextCell {
                    cell: &cell,
                    label: &label,
                }
                .to_string()
            };
            Ok((text, code))
        }
        Command::Reduce { direction, poly } => {
            let text = match direction {
                Direction::N2z => commands::reduce_n2z(&poly)?,
                Direction::Z2n => commands::reduce_z2n(&poly)?,
            };
            Ok((text, 0))
        }
        Command::Cubes { command } => Ok(match command {
            CubesCommand::Search { k, bound } => (commands::cubes_search(&k, bound), 0),
            CubesCommand::Survey { kmax, bound, json } => (commands::cubes_survey(kmax, bound, json), 0),
        }),
        Command::Frobenius { generators } => Ok((commands::frobenius(&generators)?, 0)),
    }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`.
pub fn run_with(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run(args: Vec<String>) -> i32 {
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
