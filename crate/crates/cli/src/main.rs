//! `qumbral`: tables of q-Bernoulli numbers and polynomials, basis
//! expansions, identity verification and numeric evaluation.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 computation error.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

/// Degree bound enforced unless `--force` is given.
pub const DEGREE_CAP: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "qumbral", version, about = "Exact q-umbral calculus over Q(q)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,

    /// Allow bounds above the degree cap.
    #[arg(long, global = true)]
    pub force: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Human,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate q-Bernoulli numbers or polynomials.
    Table(TableArgs),
    /// Expand a polynomial in the Bernoulli, order-r Bernoulli or (x-1)_q^k basis.
    Expand(ExpandArgs),
    /// Run identity-verification suites.
    Verify(VerifyArgs),
    /// Evaluate a named quantity at a rational q (and x).
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Number,
    Poly,
    #[value(alias = "higher_number")]
    HigherNumber,
    #[value(alias = "higher_poly")]
    HigherPoly,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,

    #[arg(long, default_value_t = 10)]
    pub n_max: usize,

    /// Order, required for the higher-order kinds.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group(ArgGroup::new("input").required(true).args(["literal", "file", "named"])))]
pub struct ExpandArgs {
    /// Inline polynomial `[[num_coeffs,den_coeffs],...]`, ascending in x.
    pub literal: Option<String>,

    /// JSON file holding `{"coeffs": [{"num": [...], "den": [...]}, ...]}`.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,

    /// Named polynomial: `x^N`, `bernoulli:N`, `higher:N:R` or `qpoch:N`.
    #[arg(long)]
    pub named: Option<String>,

    /// Target basis: `bernoulli`, `higher:R` or `qpoch`.
    #[arg(long, default_value = "bernoulli")]
    pub basis: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// prop1, classical, sheffer, thm2, lemma3, thm4, thm5, thm6, eq21, eq23,
    /// eq24, eq28, eq30, eq31 or all.
    pub suite: String,

    #[arg(long)]
    pub n_max: Option<usize>,

    #[arg(long)]
    pub r_max: Option<usize>,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Adds 1 to the cached B_{N,q} before running.
    #[arg(long, hide = true, value_name = "N")]
    pub perturb_bernoulli: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// `number:N`, `higher-number:N:R`, `poly:N`, `higher-poly:N:R`,
    /// `qint:N`, `qfactorial:N` or `qbinomial:N:K`.
    pub quantity: String,

    /// Rational value of q, `p/r`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,

    /// Rational value of x for polynomial quantities.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,

    /// Evaluate at q = 1 after cancelling common factors.
    #[arg(long, conflicts_with = "q")]
    pub limit_q1: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(if out.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Compute(_) => 3,
            })
        }
    }
}
