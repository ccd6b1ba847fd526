//! `x1scatter` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use x1scatter::PotentialKind;

#[derive(Debug, Parser)]
#[command(
    name = "x1scatter",
    version,
    about = "Spectra and S-matrices of the X1-extended Poschl-Teller potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Potential depth parameter A (> 0).
    #[arg(long = "A", global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Core parameter B (> A + 1).
    #[arg(long = "B", global = true, allow_negative_numbers = true)]
    pub b: Option<f64>,

    /// Which potential to use where a single one is needed.
    #[arg(long, global = true, value_enum, default_value_t = Kind::Extended)]
    pub kind: Kind,

    #[arg(
        long,
        global = true,
        default_value_t = 0.1,
        allow_negative_numbers = true
    )]
    pub k_min: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 5.0,
        allow_negative_numbers = true
    )]
    pub k_max: f64,
    #[arg(long, global = true, default_value_t = 50)]
    pub k_steps: usize,

    #[arg(
        long,
        global = true,
        default_value_t = 0.05,
        allow_negative_numbers = true
    )]
    pub r_min: f64,
    #[arg(
        long,
        global = true,
        default_value_t = 20.0,
        allow_negative_numbers = true
    )]
    pub r_max: f64,
    #[arg(long, global = true, default_value_t = 400)]
    pub r_steps: usize,

    /// Output format. `verify` prints a text report unless this is given.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Tabulate both potentials on an r grid.
    Potential,
    /// Bound-state energies, normalizations and residuals.
    BoundStates,
    /// S-matrix sweep over k.
    Smatrix,
    /// Unwrapped phase shifts of both potentials over k.
    PhaseShift,
    /// Run every closed-form check against its oracle.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gpt,
    Extended,
}

impl From<Kind> for PotentialKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gpt => PotentialKind::Gpt,
            Kind::Extended => PotentialKind::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    if outcome.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
