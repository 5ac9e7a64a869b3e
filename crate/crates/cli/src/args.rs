use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdeficit::{FamilySpec, OptimizerConfig};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "qdeficit", version, about = "Zero-way quantum deficit of two-qubit states")]
pub struct Cli {
    /// More log output (repeat for debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report I_M, deficit and the optimal basis for one state.
    Compute(ComputeArgs),
    /// Sweep one parameter of a family and tabulate the measures.
    Scan(ScanArgs),
    /// Evaluate random states.
    Sample(SampleArgs),
    /// Run the reproduction checks.
    Verify(VerifyArgs),
    /// Locate the curvature root a0 and optionally tabulate S_alpha curves.
    #[command(name = "find-a0")]
    FindA0(FindA0Args),
    /// Quartic roots and product-diagonal analysis of sigma_{a,t}.
    #[command(name = "sigma-roots")]
    SigmaRoots(SigmaRootsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    /// key=value file; flags given here take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Coarse grid points per angle axis.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Number of refined grid cells.
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "max-iter")]
    pub max_iterations: Option<usize>,
}

impl OptimizerArgs {
    pub fn resolve(&self, seed: Option<u64>) -> qdeficit::Result<OptimizerConfig> {
        let mut cfg = match &self.config {
            Some(p) => OptimizerConfig::from_file(p)?,
            None => OptimizerConfig::default(),
        };
        if let Some(v) = self.grid {
            cfg.coarse_grid_points_per_axis = v;
        }
        if let Some(v) = self.starts {
            cfg.refine_starts = v;
        }
        if let Some(v) = self.tol {
            cfg.tolerance = v;
        }
        if let Some(v) = self.max_iterations {
            cfg.max_iterations = v;
        }
        if let Some(v) = seed {
            cfg.seed = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Family string such as `rho_a:a=0.05`.
    #[arg(long, conflicts_with = "state_file", required_unless_present = "state_file")]
    pub state: Option<FamilySpec>,
    /// JSON density matrix `{"dim":4,"re":[[..]],"im":[[..]]}`.
    #[arg(long, value_name = "PATH")]
    pub state_file: Option<PathBuf>,
    /// Print the report as JSON instead of text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Family template; the swept parameter may be left out.
    #[arg(long)]
    pub family: FamilySpec,
    /// Name of the swept parameter.
    #[arg(long)]
    pub param: String,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Number of intervals; the scan has steps + 1 rows.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleMode {
    /// Hilbert-Schmidt random density matrices.
    Hs,
    /// rho_{a,b,p} with uniform a, b, p.
    RhoAbp,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = SampleMode::Hs)]
    pub mode: SampleMode,
    /// Emit per-bin min/max of delta0 over I_M bins instead of every state.
    #[arg(long)]
    pub envelope: bool,
    #[arg(long, default_value_t = 0.02)]
    pub bin_width: f64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these criteria (comma separated numbers).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
    /// Multiplies every tolerance; used to exercise the failure path.
    #[arg(long, hide = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,
}

#[derive(Debug, Args)]
pub struct FindA0Args {
    /// Tabulate S_alpha and its derivatives over gamma_A for these alphas.
    #[arg(long, value_delimiter = ',')]
    pub curves: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SigmaRootsArgs {
    /// Also scan t over [from, to] and tabulate a_t.
    #[arg(long)]
    pub scan_t: bool,
    #[arg(long, default_value_t = 1.0)]
    pub from: f64,
    #[arg(long, default_value_t = 3.0)]
    pub to: f64,
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    /// Search window for a_t.
    #[arg(long, default_value_t = qdeficit::analytic::A_T_WINDOW.0)]
    pub a_from: f64,
    #[arg(long, default_value_t = qdeficit::analytic::A_T_WINDOW.1)]
    pub a_to: f64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}
