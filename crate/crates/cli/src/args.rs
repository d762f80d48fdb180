use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use keynes_chaos::ergodic::budgets;

#[derive(Debug, Parser)]
#[command(
    name = "keynes-chaos-lab",
    version,
    about = "Chaos criteria and ergodic estimates for fixed-price Keynesian income maps",
    after_help = "Exit codes: 0 success, 1 usage or I/O error, 2 parameter, domain or class error.\n\
                  KCL_THREADS caps the number of worker threads used by sweeps."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the map has an odd-period cycle.
    ChaosCheck(CheckArgs),
    /// Iterate the map and emit the orbit.
    Orbit(OrbitArgs),
    /// Lyapunov exponent along the critical-value orbit.
    Lyapunov(LyapunovArgs),
    /// Summability series along the critical-value orbit (smooth model only).
    ScSum(ScArgs),
    /// Birkhoff time average of the income level.
    ErgodicSum(ErgodicArgs),
    /// Histogram estimate of the invariant density.
    Density(DensityArgs),
    /// Long-format bifurcation diagram over the chaos parameter.
    Bifurcation(BifurcationArgs),
    /// Lyapunov, summability or time-average curve over the chaos parameter.
    Sweep(SweepArgs),
    /// Iterative-expansivity certificate for the piecewise model.
    Expansivity(ExpansivityArgs),
    /// Regenerate a figure dataset with its published budgets.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Nonlinear,
    Piecewise,
}

/// Model parameters. Unset values default to the worked examples:
/// smooth (beta, delta, k) = (0.1, 3.7, 1.1), piecewise
/// (beta, mu, k, y0) = (0.6, 3, 1.1, 0.2).
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(value_enum)]
    pub model: ModelKind,
    /// Marginal propensity to consume, in (0, 1).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Chaos parameter of the smooth model.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "alpha")]
    pub delta: Option<f64>,
    /// Money-demand coefficient; the domain is [0, 1/k].
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// Investment scale (chaos parameter of the piecewise model).
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Kink of the piecewise model.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "r_cut")]
    pub y0: Option<f64>,
    /// Investment sensitivity; with --mu and --lambda sets delta = mu*alpha/lambda.
    #[arg(long, allow_negative_numbers = true, requires_all = ["mu", "lambda"])]
    pub alpha: Option<f64>,
    /// Liquidity-preference constant.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Interest-rate cut-off; with --lambda sets the piecewise kink.
    #[arg(long, allow_negative_numbers = true, requires = "lambda")]
    pub r_cut: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (a directory for `reproduce`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Decimal digits for values printed to stdout (CSV files always use
    /// shortest round-trip rendering).
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u8).range(6..=17))]
    pub precision: u8,
}

/// `critical` (the turning point) or a number in [0, 1/k].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Start {
    Critical,
    At(f64),
}

fn parse_start(s: &str) -> Result<Start, String> {
    if s.eq_ignore_ascii_case("critical") {
        return Ok(Start::Critical);
    }
    s.parse::<f64>()
        .map(Start::At)
        .map_err(|_| format!("expected `critical` or a number, got `{s}`"))
}

#[derive(Debug, Clone, Args)]
pub struct StartArg {
    #[arg(long, default_value = "critical", value_parser = parse_start, allow_negative_numbers = true)]
    pub start: Start,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Also run the numeric second/third-iterate criterion.
    #[arg(long)]
    pub numeric: bool,
    /// Also search for odd cycles up to this (odd) period.
    #[arg(long)]
    pub oracle: Option<usize>,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u8).range(6..=17))]
    pub precision: u8,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub start: StartArg,
    #[arg(long, default_value_t = budgets::ORBIT_N)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub transient: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = budgets::LYAPUNOV_N)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = budgets::SC_TERMS)]
    pub terms: usize,
    /// Partial sums above this count as divergent.
    #[arg(long, default_value_t = budgets::SC_CUTOFF)]
    pub sc_cutoff: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ErgodicArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub start: StartArg,
    #[arg(long, default_value_t = budgets::BIRKHOFF_N)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub start: StartArg,
    #[arg(long, default_value_t = budgets::DENSITY_N)]
    pub n: usize,
    #[arg(long, default_value_t = budgets::DENSITY_TRANSIENT)]
    pub transient: usize,
    #[arg(long, default_value_t = budgets::DENSITY_BINS)]
    pub bins: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parameter grid; unset values fall back to the family's default grid.
#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Include the lower end (the default grid excludes it).
    #[arg(long)]
    pub closed: bool,
}

#[derive(Debug, Args)]
pub struct BifurcationArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = crate::presets::BIFURCATION_TRANSIENT)]
    pub transient: usize,
    #[arg(long, default_value_t = crate::presets::BIFURCATION_KEEP)]
    pub keep: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Lyapunov,
    Sc,
    Ergodic,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub stat: Stat,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Orbit length (defaults: 10000 for lyapunov, 2000 for ergodic).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = budgets::SC_TERMS)]
    pub terms: usize,
    #[arg(long, default_value_t = budgets::SC_CUTOFF)]
    pub sc_cutoff: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExpansivityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Also estimate the worst-case average log-expansion numerically.
    #[arg(long)]
    pub numeric: bool,
    #[arg(long, default_value_t = budgets::EXPANSIVITY_N)]
    pub n: usize,
    #[arg(long, default_value_t = budgets::EXPANSIVITY_SAMPLES)]
    pub samples: usize,
    /// Points of the graph of the n-th iterate written with --out.
    #[arg(long, default_value_t = crate::presets::GRAPH_POINTS)]
    pub graph_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Figure identifier; see --list.
    #[arg(required_unless_present = "list")]
    pub figure: Option<String>,
    /// List the available figures and exit.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
