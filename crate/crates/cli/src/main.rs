//! `bellmax`: Bell-operator identities, maximal-violation search,
//! canonicalization and local-unitary invariants from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 input error, 3 the input was
//! rejected mathematically (not a maximal violator).

mod commands;
mod docs;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bellmax", version, about = "Maximal violations of the CHSH and Klyshko Bell inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the operator identities on one settings file or on random settings.
    Identities(IdentitiesArgs),
    /// See-saw search for the maximal Bell value.
    Maximize(MaximizeArgs),
    /// Factor a maximal violator into local unitaries on the Bell/GHZ state.
    Canonicalize(CanonicalizeArgs),
    /// Schmidt form, entropy, 3-tangle and LU class of a state.
    Invariants(InvariantsArgs),
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    /// Settings document to check.
    #[arg(long, conflicts_with = "random")]
    pub settings: Option<PathBuf>,
    /// Number of random settings to sample.
    #[arg(long, required_unless_present = "settings")]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// 2 or 3; defaults to the settings file's count, or 2 for random sampling.
    #[arg(long)]
    pub qubits: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MaximizeArgs {
    /// 2 or 3; defaults to the frozen state's count, or 2.
    #[arg(long)]
    pub qubits: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Hold this state fixed and optimize the settings only.
    #[arg(long)]
    pub state: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CanonicalizeArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub settings: PathBuf,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub state: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Identities(args) => commands::identities(&args),
        Command::Maximize(args) => commands::maximize(&args),
        Command::Canonicalize(args) => commands::canonicalize(&args),
        Command::Invariants(args) => commands::invariants(&args),
    };
    match outcome {
        Ok(out) => {
            println!("{}", out.json);
            if !out.success {
                eprintln!("{}", out.failure_note);
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("bellmax: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
