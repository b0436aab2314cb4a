//! `skewlaurent`: verify contexts, multiply in the three rings, print `N_i^n`
//! and Ore witnesses, work with cyclic convolutional codes and rerun the
//! worked examples.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails
//! or a ring is refused, 2 for unreadable or malformed input.

mod commands;
mod expr;
mod workspace;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use commands::{CodeAction, RingKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

#[derive(Parser)]
#[command(name = "skewlaurent", version, about = "Skew polynomial, power series and Laurent series arithmetic")]
struct Cli {
    /// Overrides the workspace precision `O(X^n)` for series inputs.
    #[arg(long, global = true)]
    prec: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks the algebra and (sigma, delta) and reports which rings exist.
    Verify { file: String },
    /// Multiplies two elements; operands default to `lhs`/`rhs` in the file.
    Mul {
        file: String,
        #[arg(value_enum)]
        ring: RingKind,
        #[arg(allow_hyphen_values = true)]
        lhs: Option<String>,
        #[arg(allow_hyphen_values = true)]
        rhs: Option<String>,
    },
    /// Prints the operator N_i^n on the basis.
    Nop { file: String, i: usize, n: usize },
    /// Finds n and g with X^n f = g X^k.
    Ore {
        file: String,
        #[arg(allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Stability check, cyclic closure, correspondence round trip or encoding.
    Code {
        #[arg(value_enum)]
        action: CodeAction,
        file: String,
        /// JSON list of rows of F[X] expressions, e.g. '[["X","0"]]'.
        #[arg(long)]
        generators: Option<String>,
        /// JSON list of F[X] expressions.
        #[arg(long)]
        message: Option<String>,
    },
    /// Reruns a worked example and checks each displayed identity.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn run(cli: Cli) -> Result<commands::Report, CliError> {
    let prec = cli.prec;
    if prec.is_some_and(|p| p < 0) {
        return Err(CliError::Input("--prec must be non-negative".into()));
    }
    match cli.command {
        Command::Verify { file } => commands::verify(&workspace::load(&file, prec)?),
        Command::Mul { file, ring, lhs, rhs } => commands::mul(&workspace::load(&file, prec)?, ring, lhs, rhs),
        Command::Nop { file, i, n } => commands::nop(&workspace::load(&file, prec)?, i, n),
        Command::Ore { file, f, k } => commands::ore(&workspace::load(&file, prec)?, f, k),
        Command::Code { action, file, generators, message } => {
            commands::code(&workspace::load(&file, prec)?, action, generators, message)
        }
        Command::Example { list: true, .. } => Ok(commands::list_examples()),
        Command::Example { name: Some(name), .. } => commands::example(&name),
        Command::Example { name: None, .. } => Err(CliError::Input("give an example name or --list".into())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Math(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
