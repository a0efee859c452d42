//! Command-line argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ymwave",
    version,
    about = "Verify exact plane-wave solutions of SU(2) Yang-Mills theory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the nine constraints, grid residuals and the Bianchi identity.
    Verify(VerifyArgs),
    /// Classify a parameter set into Family I, II, III or the trivial branch.
    Classify(ClassifyArgs),
    /// Refine random amplitude seeds onto roots of the constraints and classify them.
    Scan(ScanArgs),
    /// Emit E_y and B_x color components on a grid as CSV.
    Fields(FieldsArgs),
    /// Emit the energy density over one phase period as CSV.
    EnergyProfile(EnergyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

/// Ansatz parameters, either raw or via a family constructor.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Build parameters from a solution family; alpha4 stays the free amplitude.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Wavenumber [default: 1]
    #[arg(long)]
    pub k: Option<f64>,
    /// Angular frequency [default: k*c]; overrides the family value when given
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, conflicts_with = "family")]
    pub alpha1: Option<f64>,
    #[arg(long, conflicts_with = "family")]
    pub alpha2: Option<f64>,
    #[arg(long, conflicts_with = "family")]
    pub alpha3: Option<f64>,
    /// Wave amplitude [default: 1 with --family, else 0]
    #[arg(long)]
    pub alpha4: Option<f64>,
    #[arg(long, conflicts_with = "family")]
    pub alpha5: Option<f64>,
    /// Color rotation rate of the basis along y
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Gauge coupling
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Speed of light
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Family II/III sign, +1 or -1
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    /// Family II offset sign, +1 or -1
    #[arg(long, default_value_t = 1.0)]
    pub xi: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Finite-difference step
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
    /// Tolerance on normalized constraints and analytic residuals
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Sampling grid "t0:t1:n,y0:y1:n,z0:z1:n"
    #[arg(long, default_value = "0:2:10,-1:1:10,-3:3:10")]
    pub grid: String,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScanArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of random seeds
    #[arg(long, default_value_t = 1000)]
    pub seeds: usize,
    /// Base RNG seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// CSV output path [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FieldsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Sampling grid "t0:t1:n,y0:y1:n,z0:z1:n"
    #[arg(long, default_value = "0:0:1,0:0:1,0:6.283185307179586:64")]
    pub grid: String,
    /// Sample N equispaced phases at t = 0, y = 0 instead of the grid
    #[arg(long)]
    pub theta_samples: Option<usize>,
    /// CSV output path [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 360)]
    pub theta_samples: usize,
    /// Density normalization: density = kappa * Tr(E.E + B.B)
    #[arg(long, default_value_t = 0.25)]
    pub kappa: f64,
    /// CSV output path [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}
