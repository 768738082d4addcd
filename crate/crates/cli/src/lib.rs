//! Command-line front end for `varbound`: matrix I/O, single computations,
//! seeded verification suites and constant searches.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod matrix_file;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use varbound::linalg::ModulusKind;
use varbound::norms::{parse_exponent, NormSpec};
use varbound::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "varbound", version, about = "Variance bounds, matrix radii and commutator norm inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single quantity for one matrix or a pair.
    Compute(ComputeArgs),
    /// Run seeded property suites and write a JSON report.
    Verify(VerifyArgs),
    /// Search for the constant in ‖[X,Y]‖_p ≤ c‖X‖_q‖Y‖_r.
    Search(SearchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Norm,
    Radius,
    Variance,
    Numrange,
    Wradius,
    CommutatorBounds,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub quantity: Quantity,
    /// Matrix file for single-matrix quantities.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// First matrix of a commutator pair.
    #[arg(long)]
    pub x: Option<PathBuf>,
    /// Second matrix of a commutator pair.
    #[arg(long)]
    pub y: Option<PathBuf>,
    /// Density matrix for `variance`; omitted means the maximum over all states.
    #[arg(long)]
    pub rho: Option<PathBuf>,
    #[arg(long, default_value = "C", value_parser = parse_kind)]
    pub kind: ModulusKind,
    #[arg(long, default_value = "schatten:2", value_parser = parse_spec)]
    pub spec: NormSpec,
    #[arg(long, default_value = "2", value_parser = parse_exp)]
    pub p: f64,
    #[arg(long, default_value = "2", value_parser = parse_exp)]
    pub q: f64,
    #[arg(long, default_value = "2", value_parser = parse_exp)]
    pub r: f64,
    /// Number of support directions for `numrange`.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub dim_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Where to write the JSON report; printed to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = parse_exp)]
    pub p: f64,
    #[arg(long, value_parser = parse_exp)]
    pub q: f64,
    #[arg(long, value_parser = parse_exp)]
    pub r: f64,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Path prefix; the best pair is written to `<prefix>_x.json` and `<prefix>_y.json`.
    #[arg(long)]
    pub save_witness: Option<PathBuf>,
}

fn parse_exp(s: &str) -> Result<f64, String> {
    parse_exponent(s).map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<ModulusKind, String> {
    s.parse().map_err(|e: varbound::Error| e.to_string())
}

fn parse_spec(s: &str) -> Result<NormSpec, String> {
    s.parse().map_err(|e: varbound::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: varbound::Error| e.to_string())
}
