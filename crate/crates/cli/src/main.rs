//! `entmono`: batch CLI for the entanglement-monogamy diagnostics.
//!
//! Subcommands reproduce the σ_γ counterexample table, sweep γ grids, check
//! the pure-state monogamy inequalities on random states, evaluate the FEF
//! of a state file, and run the teleportation Monte-Carlo estimator.
//!
//! Exit codes: 0 success / claims confirmed, 2 numeric failure, 64 usage
//! error, 65 data error.

mod commands;
mod output;
mod rational;
mod statefile;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EX_OK: u8 = 0;
pub const EX_NUMERIC: u8 = 2;
pub const EX_USAGE: u8 = 64;
pub const EX_DATA: u8 = 65;

#[derive(Debug, Parser)]
#[command(name = "entmono", version, about = "Entanglement monogamy diagnostics", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct CommonOpts {
    /// Seed for all pseudo-random sampling; fixed seed means bit-identical output.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Restarts for the 2⊗d FEF optimizer.
    #[arg(long, global = true, default_value_t = 32)]
    pub restarts: usize,

    /// Convergence tolerance for the 2⊗d FEF optimizer.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Machine-readable output format (to stdout, or to --out when given).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write machine-readable output to this path instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reproduce the σ_γ counterexample table on the reference γ grid.
    ReproducePaper {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Counterexample rows on a uniform γ grid.
    Sweep {
        #[command(flatten)]
        common: CommonOpts,
        /// Smallest γ of the grid, between 0 and 1.
        #[arg(long)]
        gamma_min: f64,
        /// Largest γ of the grid, between 0 and 1.
        #[arg(long)]
        gamma_max: f64,
        /// Number of grid points.
        #[arg(long)]
        steps: usize,
    },
    /// Monogamy residuals on Haar-random n-qubit pure states.
    Check {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of qubits (3, 4 or 5).
        #[arg(long)]
        qubits: usize,
        /// Number of random states to sample.
        #[arg(long)]
        trials: usize,
    },
    /// Fully entangled fraction of a state loaded from a file.
    Fef {
        #[command(flatten)]
        common: CommonOpts,
        /// Path to a state file (JSON with dims + matrix or amplitudes).
        #[arg(long)]
        state: std::path::PathBuf,
        /// Bipartition to evaluate, e.g. 2,4.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// Monte-Carlo teleportation fidelity over the σ_γ (1,3) reduction.
    Telesim {
        #[command(flatten)]
        common: CommonOpts,
        /// Family parameter γ, between 0 and 1.
        #[arg(long)]
        gamma: f64,
        /// Monte-Carlo sample count (at least 100).
        #[arg(long)]
        samples: usize,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EX_USAGE, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self { code: EX_DATA, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { code: EX_NUMERIC, message: message.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: EX_DATA, message: format!("io error: {e}") }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    return ExitCode::from(EX_OK);
                }
                _ => EX_USAGE,
            };
            eprint!("{err}");
            return ExitCode::from(code);
        }
    };

    let result = match cli.command {
        Command::ReproducePaper { common } => commands::reproduce_paper(&common),
        Command::Sweep { common, gamma_min, gamma_max, steps } => {
            commands::sweep(&common, gamma_min, gamma_max, steps)
        }
        Command::Check { common, qubits, trials } => commands::check(&common, qubits, trials),
        Command::Fef { common, state, dims } => commands::fef(&common, &state, &dims),
        Command::Telesim { common, gamma, samples } => commands::telesim(&common, gamma, samples),
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("entmono: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
