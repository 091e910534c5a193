//! `surd-sails`: command-line front end.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when an internal invariant
//! fails (including panics).

mod commands;
mod parse;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "surd-sails", version, about = "Continued fractions, Klein sails and period symmetry of quadratic irrationalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Format {
    /// Emit a JSON record instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Periodic continued fraction of a surd.
    Expand {
        /// `sqrt(p/q)`, `(a+b*sqrt(d))/c`, `root+ A B C` or `[a0; a1, (p1, p2)]`.
        #[arg(allow_hyphen_values = true)]
        operand: String,
        #[command(flatten)]
        format: Format,
    },
    /// Exact value of a periodic continued fraction.
    Value {
        #[arg(allow_hyphen_values = true)]
        cf: String,
        #[command(flatten)]
        format: Format,
    },
    /// Period symmetry flags, centers and witnesses.
    Classify {
        #[arg(allow_hyphen_values = true)]
        operand: String,
        #[command(flatten)]
        format: Format,
    },
    /// The first N convergents p_k/q_k.
    Convergents {
        #[arg(allow_hyphen_values = true)]
        operand: String,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Whether two surds have equal tails, with a GL2(Z) certificate.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[command(flatten)]
        format: Format,
    },
    /// Automorphism of the form attached to A·x² + B·x + C.
    Auto {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        format: Format,
    },
    /// Vertices of the two sails over an index window.
    Sail {
        #[arg(allow_hyphen_values = true)]
        operand: String,
        /// Index window `k0:k1`.
        #[arg(long, default_value = "-2:10", allow_hyphen_values = true)]
        range: String,
        /// Also write an SVG drawing to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        format: Format,
    },
    /// Classify every reduced surd with discriminant at most N.
    Survey {
        #[arg(long)]
        dmax: u64,
        /// JSON records; to FILE if given, else to stdout.
        #[arg(long, value_name = "FILE", num_args = 0..=1, conflicts_with = "csv")]
        json: Option<Option<PathBuf>>,
        /// CSV rows to FILE.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
}

/// Why a command failed.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Invariant(String),
}

impl From<surd_sails::Error> for Failure {
    fn from(e: surd_sails::Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<parse::ParseError> for Failure {
    fn from(e: parse::ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| commands::run(cli.command))) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Invariant(msg))) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}
