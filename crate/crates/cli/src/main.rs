//! `ffsolve`: analyze, solve and verify qubit Hamiltonians with even-hole
//! and claw free frustration graphs.

mod commands;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use freefermion::recognition::DEFAULT_BUDGET;
use input::ModelArgs;

#[derive(Parser, Debug)]
#[command(name = "ffsolve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
enum Command {
    /// Structure of the frustration graph and its independence polynomial.
    Analyze {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Single-particle energies and the free spectrum.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
        /// Also build the fermionic modes and check their algebra.
        #[arg(long)]
        modes: bool,
    },
    /// Run every check against exact diagonalization.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
        /// Compare spectra even if the graph is not even-hole and claw free.
        #[arg(long)]
        force: bool,
        /// Only compare spectra, skipping the operator identities and modes.
        #[arg(long)]
        spectrum_only: bool,
    },
    /// Energies of an open staggered chain against momentum, as CSV.
    Dispersion {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long = "N")]
        cells: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Gap at two chain lengths over a grid of couplings, as CSV.
    Scan {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long = "N", default_value_t = 60)]
        cells: usize,
        /// Larger length for the trend.
        #[arg(long = "Nprime", default_value_t = 120)]
        larger: usize,
        /// Lattice resolution of the coupling simplex.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Scan only along `b_k^2 = t` with the other couplings equal.
        #[arg(long, value_delimiter = ',')]
        last: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a model family as a Hamiltonian file.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        /// Write the frustration graph instead.
        #[arg(long)]
        graph: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Numerical tolerance for spectra and mode relations.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Search budget for hole and clique enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Squared couplings of a chain. Missing entries share what is left of a
/// unit total equally.
#[derive(Args, Debug, Clone, Serialize)]
struct ChainArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    b1sq: Option<String>,
    #[arg(long)]
    b2sq: Option<String>,
    #[arg(long)]
    b3sq: Option<String>,
    #[arg(long)]
    b4sq: Option<String>,
    #[arg(long)]
    b5sq: Option<String>,
    #[arg(long)]
    b6sq: Option<String>,
    #[arg(long)]
    b7sq: Option<String>,
    #[arg(long)]
    b8sq: Option<String>,
}

impl ChainArgs {
    fn given(&self) -> [&Option<String>; 8] {
        [&self.b1sq, &self.b2sq, &self.b3sq, &self.b4sq, &self.b5sq, &self.b6sq, &self.b7sq, &self.b8sq]
    }
}

/// Exit codes.
const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NOT_FREE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

/// Writes through a sibling temporary file so readers never see half a file.
fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let mut tmp = p.as_os_str().to_owned();
            tmp.push(".tmp");
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, p)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => match emit(&out.text, out.path.as_deref()) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_ERROR)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                freefermion::Error::Undecided { .. } => EXIT_UNDECIDED,
                _ => EXIT_ERROR,
            })
        }
    }
}
