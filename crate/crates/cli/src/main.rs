//! `mllnet`: command-line front end of the proof-net workbench.
//!
//! Exit codes: 0 when the verdict is true or the command succeeded, 1 when
//! the verdict is false, 2 on input errors, 3 when a search budget ran out.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "mllnet", version, about = "Proof-net workbench for MLL nets with daimons")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print every intermediate net of reduction paths.
    #[arg(long, global = true)]
    pub trace: bool,
    /// State budget of reduction searches.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_states: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Switching criterion; with --against, also testability and the tests.
    Check {
        file: PathBuf,
        #[arg(long)]
        against: Option<String>,
    },
    /// Print the tests of a formula.
    Tests { formula: String },
    /// Orthogonality of two nets with the same number of conclusions.
    Ortho { left: PathBuf, right: PathBuf },
    /// Normal form reached by always reducing the first cut.
    Normalize {
        file: PathBuf,
        /// Every normal form, by exhaustive search.
        #[arg(long)]
        all: bool,
    },
    /// Net of a proof file.
    Deseq { file: PathBuf },
    /// Proof of a net for a sequent.
    Seq {
        file: PathBuf,
        #[arg(long)]
        sequent: String,
    },
    /// Orthogonality to the finite opponents of a sequent.
    Realize {
        file: PathBuf,
        #[arg(long)]
        sequent: String,
        /// `one`, `par`, or a basis JSON file.
        #[arg(long, default_value = "one")]
        basis: String,
        #[arg(long, default_value = "both")]
        mode: String,
        /// Write the per-opponent report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Nets atomically testable by a sequent.
    Enum {
        #[arg(long)]
        sequent: String,
        /// Write one net file per instance into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_leaves: usize,
    },
    /// Graphviz rendering of a net.
    Dot { file: PathBuf },
    /// Bounded experiments.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// Nets of enumerated proofs realise their conclusions.
    Adequacy {
        #[arg(long, default_value = "X,Y")]
        vars: String,
        #[arg(long, default_value_t = 3)]
        max_rules: usize,
        #[arg(long, default_value_t = 2)]
        max_daimon_arity: usize,
        #[arg(long, default_value = "one")]
        basis: String,
        #[arg(long, default_value = "both")]
        mode: String,
    },
    /// Realisation against testability and correctness on testable nets.
    Completeness {
        /// A sequent; repeat the flag for several.
        #[arg(long, required = true)]
        sequent: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
    },
    /// Path properties on random interactions.
    Properties {
        #[arg(long, default_value_t = 20)]
        nets: usize,
        #[arg(long, default_value_t = 10)]
        paths: usize,
        #[arg(long, default_value_t = 10)]
        max_links: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome { text, code }) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("undecided: {e}");
            ExitCode::from(3)
        }
    }
}
