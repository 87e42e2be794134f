//! `nnspectra`: exact parameters and asymptotic sandwiches of nonnegative
//! matrices from the command line.

mod commands;
mod envelope;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nnspectra::MatrixFormat;

use crate::envelope::{Failure, Outcome};

#[derive(Debug, Parser)]
#[command(name = "nnspectra", version, about = "Nonnegative matrix parameters and asymptotic spectra")]
pub struct Cli {
    /// Input matrix format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<InputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for every combinatorial search.
    #[arg(long, global = true, env = "NNSPECTRA_BUDGET")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Json,
    Csv,
}

impl From<InputFormat> for MatrixFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Json => MatrixFormat::Json,
            InputFormat::Csv => MatrixFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PropPoint {
    Rank,
    FractionalCover,
    Axioms,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, subrank, fractional cover number and nonnegative rank bounds.
    Param {
        file: PathBuf,
        /// Relative residual accepted from the float factorization heuristic.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Seeds for the factorization heuristic.
        #[arg(long, value_delimiter = ',', default_values_t = [0u64, 1, 2])]
        seeds: Vec<u64>,
    },
    /// Sandwich bounds on the asymptotic nonnegative rank and subrank.
    Asymptotic {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_power: usize,
    },
    /// Congruence under permutations and positive scalings.
    Congruent { file_a: PathBuf, file_b: PathBuf },
    /// Congruence after discarding zero rows and columns.
    Equivalent { file_a: PathBuf, file_b: PathBuf },
    /// Fractional cover, or the minimum t-fold cover with `--t`.
    Cover {
        file: PathBuf,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Diagonal certificate in a Kronecker power of a triangular matrix.
    Triangular {
        file: PathBuf,
        #[arg(long)]
        power: usize,
    },
    /// Seeded law checks for spectral points and the preorder axioms.
    Propcheck {
        #[arg(long, value_enum, default_value = "all")]
        point: PropPoint,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match commands::run(&cli) {
        Ok(outcome) => render(&cli, &outcome),
        Err(failure) => {
            eprintln!("{}", failure.to_json());
            return ExitCode::from(failure.code);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("{}", Failure::input(format!("cannot write output: {e}")).to_json());
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn render(cli: &Cli, outcome: &Outcome) -> (String, u8) {
    let text = if cli.pretty {
        envelope::pretty(&outcome.envelope)
    } else {
        let mut s = serde_json::to_string(&outcome.envelope).expect("JSON values serialize");
        s.push('\n');
        s
    };
    (text, outcome.code)
}
