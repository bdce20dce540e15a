use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fracepi_core::checks::VerifyLevel;
use fracepi_core::{FractionalOrder, SweepParameter};

#[derive(Debug, Parser)]
#[command(name = "fracepi", version, about = "Fractional-order SEIPAHRF COVID-19 model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one scenario and write its trajectory CSV.
    Run(RunArgs),
    /// Solve a scenario for several values of alpha or beta.
    Sweep(SweepArgs),
    /// Print the basic reproduction number in both closed forms.
    R0(ParamsArgs),
    /// Classify global stability of the disease-free equilibrium.
    Stability(ParamsArgs),
    /// Run the solver and model self-checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct HorizonArgs {
    /// Fractional order in (0, 1].
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: Option<f64>,
    /// Horizon in days.
    #[arg(long = "t-end", value_parser = parse_positive)]
    pub t_end: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: Option<u64>,
    /// Significant digits in CSV output.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
}

/// Replacements for individual model rates.
#[derive(Debug, Default, Args)]
pub struct ParamOverrides {
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long = "beta-prime")]
    pub beta_prime: Option<f64>,
    #[arg(long)]
    pub l: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub rho1: Option<f64>,
    #[arg(long)]
    pub rho2: Option<f64>,
    #[arg(long = "gamma-a")]
    pub gamma_a: Option<f64>,
    #[arg(long = "gamma-i")]
    pub gamma_i: Option<f64>,
    #[arg(long = "gamma-r")]
    pub gamma_r: Option<f64>,
    #[arg(long = "delta-i")]
    pub delta_i: Option<f64>,
    #[arg(long = "delta-p")]
    pub delta_p: Option<f64>,
    #[arg(long = "delta-h")]
    pub delta_h: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Builtin scenario name or scenario file path.
    #[arg(long)]
    pub scenario: String,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub horizon: HorizonArgs,
    #[command(flatten)]
    pub overrides: ParamOverrides,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: String,
    #[arg(long, value_parser = parse_sweep_parameter)]
    pub param: SweepParameter,
    /// Comma-separated values.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_f64)]
    pub values: Vec<f64>,
    #[arg(long = "out-dir")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub horizon: HorizonArgs,
    #[command(flatten)]
    pub overrides: ParamOverrides,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long, default_value = "wuhan")]
    pub scenario: String,
    #[command(flatten)]
    pub overrides: ParamOverrides,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "quick", value_parser = parse_level)]
    pub level: VerifyLevel,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    FractionalOrder::new(v).map(FractionalOrder::value).map_err(|_| format!("alpha must lie in (0, 1], got {v}"))
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn parse_sweep_parameter(s: &str) -> Result<SweepParameter, String> {
    s.parse().map_err(|_| format!("expected alpha or beta, got {s:?}"))
}

fn parse_level(s: &str) -> Result<VerifyLevel, String> {
    s.parse().map_err(|_| format!("expected quick or full, got {s:?}"))
}
