//! `tarl`: batch front end to the relevance-logic toolkit.
//!
//! Exit codes: 0 success, 1 refutation or failed check, 2 usage or input error.

mod commands;
mod resolve;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }
}

/// What a command produced: text for people, JSON for machines, and
/// whether the answer was negative.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub refuted: bool,
}

#[derive(Parser, Debug)]
#[command(
    name = "tarl",
    version,
    about = "Proofs, models and relation algebras for Tarski's relevance logic"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and show its structure.
    Parse { formula: String },
    /// Check a proof script (a file, or a corpus id).
    Check { proof: String },
    /// Search for a cut-free proof.
    Prove {
        formula: String,
        #[arg(long, default_value_t = 4)]
        max_index: u8,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        nodes: usize,
    },
    /// Decide validity in a finite structure.
    Valid { model: String, formula: String },
    /// Find a refuting valuation.
    Countermodel {
        model: String,
        formula: String,
        /// List every singleton valuation under which the formula is empty.
        #[arg(long)]
        singletons: bool,
    },
    /// Audit the structural postulates of a structure.
    Postulates { model: String },
    /// Check the built-in proof corpus.
    Corpus {
        #[arg(long)]
        filter: Option<String>,
    },
    /// Translate a formula into a relation-algebra term.
    Translate { formula: String },
    /// Test identities in complex algebras (default) or random proper ones (--base).
    AlgebraTest {
        identity: String,
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check an equational derivation step by step.
    Chain {
        /// K1..K5, a model file, or `proper:N`.
        algebra: String,
        /// A chain file or a built-in chain name.
        chain: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Build K3 from the order-21 group and audit its representation.
    Grouprep {
        #[arg(long)]
        partition: usize,
    },
    /// Certify that an implication between two formulas shares a variable or fails in K4.
    Sharing {
        antecedent: String,
        consequent: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = tarl::exec::with_jobs(cli.jobs, || {
        commands::run(&cli.command, resolve::exec_for(cli.jobs))
    });
    match outcome {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                );
            } else {
                print!("{}", report.text);
            }
            if report.refuted {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
