//! `logcurve` — exact log-de Rham cohomology, monodromy and Du Bois
//! cohomology of nodal curves from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input/parse error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod family;

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "logcurve",
    version,
    about = "Exact log-de Rham cohomology, monodromy and Du Bois cohomology of nodal curves",
    max_term_width = 100
)]
pub struct Cli {
    /// Read the curve description from FILE (default: stdin)
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Write output to FILE (default: stdout)
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in example family as a curve file
    Generate {
        /// One of: chain_N, cycle_N, banana_M, theta, random(V,E[,SEED])
        family: String,
        /// Seed for random(V,E) when none is given inline
        #[arg(long, default_value_t = 0, value_name = "SEED")]
        seed: u64,
    },
    /// Full cohomology/monodromy report for the input curve
    Report,
    /// Residue of a 1-form (given by its dz-coefficient) at a point
    Residue {
        /// Expression in z, e.g. "1/(z^2 - z)"
        form: String,
        /// A rational number, or "inf"
        point: String,
    },
    /// Class coordinates and monodromy image of each cocycle in the input
    Class,
    /// Run the verification battery on the input curve
    Verify {
        /// Truncation depth for the independent dimension oracle
        #[arg(long, default_value_t = 3, value_name = "D")]
        oracle: usize,
        /// Number of random orientation-flip rounds
        #[arg(long, default_value_t = 3, value_name = "K")]
        flips: usize,
        /// Seed for random units, flip subsets and spot-check forms
        #[arg(long, default_value_t = 0, value_name = "SEED")]
        units: u64,
    },
}

impl Cli {
    fn read_input(&self) -> Result<String, CliError> {
        match &self.input {
            Some(path) => fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display()))),
            None => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
                Ok(buf)
            }
        }
    }

    fn write_output(&self, text: &str) -> Result<(), CliError> {
        match &self.output {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate { family, seed } => commands::generate(&cli, family, *seed),
        Command::Report => commands::report(&cli),
        Command::Residue { form, point } => commands::residue(&cli, form, point),
        Command::Class => commands::class(&cli),
        Command::Verify {
            oracle,
            flips,
            units,
        } => commands::verify(&cli, *oracle, *flips, *units),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
