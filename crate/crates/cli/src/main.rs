use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilgeo::NilError;
use serde::Serialize;

mod commands;

/// Geometry and minimal graphs in Nil3 with the balanced metric.
#[derive(Debug, Parser)]
#[command(name = "nilgeo", version)]
struct Cli {
    /// Solver configuration file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override one solver key, e.g. `--set newton_tol=1e-12`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Geodesic through the identity: closed form against RK4.
    Geodesic(GeodesicArgs),
    /// Gaussian curvature of the plane from both oracles.
    Curvature(CurvatureArgs),
    /// Catenoid profile, flux and mean curvature.
    Catenoid(CatenoidArgs),
    /// Radial barrier for the exterior problem.
    Barrier(BarrierArgs),
    /// Exterior Dirichlet problem by exhaustion.
    Exterior(ExteriorArgs),
    /// Asymptotic Dirichlet problem on growing disks.
    Asymptotic(AsymptoticArgs),
    /// Claim-by-claim report for the plane and the catenoids.
    Verify(VerifyArgs),
    /// Mesh export of a sampled surface.
    Export(ExportArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GeodesicArgs {
    /// Launch angle.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Arc length.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Write `t, x, y, zeta` along the integrated path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CurvatureArgs {
    /// Geodesic radii.
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.5,1,2,5,10")]
    pub r: Vec<f64>,
    /// Finite-difference step of the Riemann oracle.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct CatenoidArgs {
    /// Flux parameter.
    #[arg(long)]
    pub c: f64,
    /// Neck radius; defaults to the smallest admissible one.
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long, default_value_t = 6.0)]
    pub tmax: f64,
    /// Profile samples.
    #[arg(long, default_value_t = 41)]
    pub n: usize,
    /// Angular samples of the mesh.
    #[arg(long, default_value_t = 48)]
    pub n_theta: usize,
    /// Write columns `t, h, du` of the profile.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub export_obj: Option<PathBuf>,
    #[arg(long)]
    pub export_ply: Option<PathBuf>,
    /// Attach |H| per vertex to exported meshes; the neck row is sampled just above the neck.
    #[arg(long)]
    pub residual: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct BarrierArgs {
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 30.0)]
    pub rmax: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// Write columns `r, f, df`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ExteriorArgs {
    /// Boundary gradient.
    #[arg(long)]
    pub s: f64,
    /// Radius of the removed disk.
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    /// Exhaustion radii, comma separated.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Write columns `r, u` along the ray `theta = 0` of the largest domain.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the full result as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Mesh of the graph over the largest domain.
    #[arg(long)]
    pub export_obj: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct AsymptoticArgs {
    /// Boundary data `const:C`, `cos:A[,k]` or `sin:A[,k]`.
    #[arg(long, default_value = "cos:1,1")]
    pub phi: String,
    /// Disk radii, comma separated.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Write columns `r, u` along the ray `theta = 0` of the largest disk.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// One tolerance for every bounded check instead of the defaults.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Plane,
    Cylinder,
    Catenoid,
}

#[derive(Debug, Args, Serialize)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceKind,
    /// Output path; `.obj` or `.ply`.
    #[arg(long)]
    pub out: PathBuf,
    /// Samples per direction.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Half width of the plane, radius of the cylinder or flux of the catenoid.
    #[arg(long, default_value_t = 2.0)]
    pub size: f64,
    /// Height of the cylinder or `tmax` of the catenoid.
    #[arg(long, default_value_t = 4.0)]
    pub extent: f64,
}

fn exit_code(e: &NilError) -> u8 {
    match e {
        NilError::InvalidParameter(_)
        | NilError::Config(_)
        | NilError::NonPositiveStep(_)
        | NilError::NegativeRadius(_)
        | NilError::BelowNeck { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("NILGEO_LOG", "warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
