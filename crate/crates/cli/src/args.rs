use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "solenoid",
    version,
    about = "Dimensions of linear solenoid attractors and their Bernoulli measures"
)]
pub struct Cli {
    /// Worker threads for sampling, estimation and sweeps [default: available parallelism]
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Attractor dimension, optional measure dimension, and the full-dimension verdict
    Dims(DimsArgs),
    /// Sample the attractor (2D cross-section or 3D) as a CSV point cloud
    Attractor(AttractorArgs),
    /// Run a numerical estimator end to end
    #[command(subcommand)]
    Estimate(EstimateCommand),
    /// Tabulate dimensions and verdicts over a parameter grid
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum EstimateCommand {
    /// Box-counting slope of a chaos-game cross-section
    Box(BoxArgs),
    /// Local dimension of the 3D measure, or of points read from CSV
    Local(LocalArgs),
    /// Lyapunov exponents by Birkhoff averages along random orbits
    Lyapunov(LyapunovArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Space {
    #[value(name = "2")]
    #[serde(rename = "2")]
    Planar,
    #[value(name = "3")]
    #[serde(rename = "3")]
    Solid,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    /// Parameters beta1,beta2,tau1,tau2
    #[arg(long, value_parser = parse_params)]
    pub v: [f64; 4],
    /// Bernoulli parameter; adds the measure-dimension report
    #[arg(long)]
    pub p: Option<f64>,
    /// Projected-dimension override for an overlapping weak-direction pair
    #[arg(long = "override")]
    pub override_dim: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AttractorArgs {
    #[arg(long, value_parser = parse_params)]
    pub v: [f64; 4],
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(short, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// 2 for the (y, z) cross-section, 3 for points of the solid attractor
    #[arg(long, value_enum, default_value_t = Space::Planar)]
    pub dim: Space,
    /// Chaos-game steps discarded before recording (2D only)
    #[arg(long, default_value_t = solenoid_dim::ifs::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoxArgs {
    #[arg(long, value_parser = parse_params)]
    pub v: [f64; 4],
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(short, default_value_t = 100_000)]
    pub n: usize,
    /// Dyadic scales 2^-k for k in MIN:MAX
    #[arg(long, value_parser = parse_k, default_value = "2:8")]
    pub k: (u32, u32),
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = solenoid_dim::ifs::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    /// Parameters for a generated 3D sample (not needed with --samples)
    #[arg(long, value_parser = parse_params, required_unless_present = "samples")]
    pub v: Option<[f64; 4]>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Generated sample size
    #[arg(short, default_value_t = 200_000)]
    pub n: usize,
    /// Number of query points, taken from the start of the sample
    #[arg(long, default_value_t = 200)]
    pub queries: usize,
    /// CSV of sample points (1 to 3 columns) instead of a generated cloud
    #[arg(long, conflicts_with = "v")]
    pub samples: Option<PathBuf>,
    /// CSV of query points; defaults to the first --queries samples
    #[arg(long, requires = "samples")]
    pub queries_file: Option<PathBuf>,
    #[arg(long, value_parser = parse_k, default_value = "2:6")]
    pub k: (u32, u32),
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[arg(long, value_parser = parse_params)]
    pub v: [f64; 4],
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Iterates per orbit
    #[arg(short, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 32)]
    pub orbits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Grid axes take `a,b,c` or an inclusive range `start:stop:step`.
#[derive(Debug, Args)]
pub struct SweepArgs {
    /// key = value file with the same keys as the axis flags; flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, conflicts_with = "beta")]
    pub beta1: Option<String>,
    #[arg(long, conflicts_with = "beta")]
    pub beta2: Option<String>,
    #[arg(long, conflicts_with = "tau")]
    pub tau1: Option<String>,
    #[arg(long, conflicts_with = "tau")]
    pub tau2: Option<String>,
    /// Sets beta1 = beta2 on every row
    #[arg(long)]
    pub beta: Option<String>,
    /// Sets tau1 = tau2 on every row
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long = "override")]
    pub override_dim: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn parse_params(s: &str) -> Result<[f64; 4], String> {
    let values: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 comma-separated values, got {}", v.len()))
}

pub fn parse_k(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected MIN:MAX")?;
    let lo = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    Ok((lo, hi))
}
