use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use isokit::SpaceKind;

#[derive(Debug, Parser)]
#[command(name = "isokit", version, about = "Frames, osculating spheres and spherical-curve classification in isotropic spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frenet, rotation-minimizing and bivector frames along a curve.
    Frames(RunArgs),
    /// Normal-development classification: plane, spherical or generic.
    Classify(RunArgs),
    /// Osculating spheres along a curve, or the normal form of a sphere spec.
    Sphere(RunArgs),
    /// Run the acceptance property suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Curve spec (.json), sampled curve (.csv) or, for `sphere`, a sphere spec.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,

    /// Ambient space: isotropic, pseudo or euclidean.
    #[arg(long)]
    pub space: Option<SpaceKind>,

    /// Number of samples along the curve (at least 64).
    #[arg(long)]
    pub samples: Option<usize>,

    /// Finite-difference order (2, 4 or 6); forces finite differences.
    #[arg(long)]
    pub fd_order: Option<usize>,

    /// Finite-difference step; forces finite differences.
    #[arg(long, allow_negative_numbers = true)]
    pub fd_step: Option<f64>,

    /// RM gauge (initial rotation angle in Euclidean space).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub tau0: f64,

    /// Absolute line-fit tolerance (default 1e-4 times the development scale).
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,

    /// Absolute origin tolerance (default 1e-3 times the development scale).
    #[arg(long, allow_negative_numbers = true)]
    pub origin_tol: Option<f64>,

    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,

    /// Machine-readable JSON on stdout, including errors.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = isokit::selftest::DEFAULT_SEED)]
    pub seed: u64,

    /// Reduced sample counts and relaxed tolerances.
    #[arg(long)]
    pub quick: bool,

    /// Run a single criterion (1 to 8).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub criterion: Option<u8>,

    #[arg(long)]
    pub json: bool,
}
