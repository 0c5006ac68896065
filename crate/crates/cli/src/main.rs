//! riex: curvature scans, metric extensions, geodesic integration,
//! closed-form verification and translation surfaces from the command line.
//!
//! Exit status: 0 on success, 1 when a verification flag fires or a
//! computation fails, 2 on configuration errors.

mod commands;
mod output;
mod registry;

use clap::{Args, Parser, Subcommand};
use commands::Outcome;
use output::Format;
use riex_core::antimach::BranchFilter;
use riex_core::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "riex", version, about = "Riemann extension toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Connection coefficients of a metric at a point
    Christoffel(ChristoffelArgs),
    /// Max |Ricci| scan over points
    Ricci(RicciArgs),
    /// Kretschmann scalar scan over points
    Kretschmann(KretschmannArgs),
    /// Extended metric components of a base metric's connection
    Extend(ExtendArgs),
    /// Integrate a geodesic and export the trajectory
    Geodesic(GeodesicArgs),
    /// Verify the closed-form geodesic solutions against the integrator
    Verify(VerifyArgs),
    /// Sample a translation surface and its defining residuals
    Surface(SurfaceArgs),
}

/// Point selection shared by the scan commands.
#[derive(Args)]
pub struct PointSource {
    /// Explicit point(s) as comma-separated coordinates (repeatable)
    #[arg(long)]
    pub point: Option<Vec<String>>,
    /// Pseudo-random points: random:N
    #[arg(long)]
    pub points: Option<String>,
    /// Sampling range lo,hi for random points (default -2,2)
    #[arg(long)]
    pub range: Option<String>,
    /// Seed for the point sampler
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args)]
pub struct ChristoffelArgs {
    /// Metric id: antimach4, antimach8, flat[N], sphere2, or a JSON spec path
    #[arg(long, default_value = "antimach4")]
    pub metric: String,
    /// Evaluation point, comma-separated
    #[arg(long)]
    pub point: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RicciArgs {
    #[arg(long, default_value = "antimach8")]
    pub metric: String,
    #[command(flatten)]
    pub points: PointSource,
    /// Pass threshold on max |R_ik|; exit 1 when exceeded
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct KretschmannArgs {
    #[arg(long, default_value = "antimach4")]
    pub metric: String,
    #[command(flatten)]
    pub points: PointSource,
    /// Pass threshold on |K|; exit 1 when exceeded
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExtendArgs {
    /// Base metric whose Levi-Civita connection is extended
    #[arg(long, default_value = "antimach4")]
    pub metric: String,
    /// Query point on the doubled chart (2n values; origin when omitted)
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GeodesicArgs {
    #[arg(long, default_value = "antimach8")]
    pub metric: String,
    /// Base initial point (4 values on the doubled chart, n otherwise)
    #[arg(long)]
    pub x0: Option<String>,
    /// Fiber initial point P,Q,U,V (doubled chart only)
    #[arg(long)]
    pub psi0: Option<String>,
    /// Base initial direction xi (doubled chart only)
    #[arg(long)]
    pub xi: Option<String>,
    /// Fiber initial direction h (doubled chart only)
    #[arg(long)]
    pub h: Option<String>,
    /// Full initial velocity, n values (alternative to --xi/--h)
    #[arg(long)]
    pub v0: Option<String>,
    #[arg(long = "s-max", default_value_t = 1.0)]
    pub s_max: f64,
    /// Integrator tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Sample count for evenly spaced dense output (accepted steps when omitted)
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// CLI-facing branch selector, mapped onto the library's filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BranchArg {
    Both,
    #[value(name = "xi3-zero")]
    Xi3Zero,
    #[value(name = "xi3-nonzero")]
    Xi3NonZero,
}

impl From<BranchArg> for BranchFilter {
    fn from(value: BranchArg) -> Self {
        match value {
            BranchArg::Both => BranchFilter::Both,
            BranchArg::Xi3Zero => BranchFilter::Xi3Zero,
            BranchArg::Xi3NonZero => BranchFilter::Xi3NonZero,
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which solution family to verify
    #[arg(long, value_enum, default_value_t = BranchArg::Both)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Flag threshold on closed-form vs oracle deviations
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Oracle integrator tolerance
    #[arg(long = "oracle-tol", default_value_t = 1e-12)]
    pub oracle_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SurfaceArgs {
    /// Generator spec JSON (f, g, c3, c4, c5, g1, g2, domain)
    #[arg(long)]
    pub gen: Option<PathBuf>,
    /// Sampling grid: N or NUxNV
    #[arg(long, default_value = "50")]
    pub grid: String,
    /// Override domain rectangle u0,u1,v0,v1
    #[arg(long)]
    pub domain: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn init_thread_pool() {
    if let Ok(threads) = std::env::var("RE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Christoffel(args) => commands::run_christoffel(args),
        Command::Ricci(args) => commands::run_ricci(args),
        Command::Kretschmann(args) => commands::run_kretschmann(args),
        Command::Extend(args) => commands::run_extend(args),
        Command::Geodesic(args) => commands::run_geodesic(args),
        Command::Verify(args) => commands::run_verify(args),
        Command::Surface(args) => commands::run_surface(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Flagged) => ExitCode::from(1),
        Err(e @ Error::ConfigError(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
