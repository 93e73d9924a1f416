//! Command-line flags, the JSON config file and their merge into a `RunConfig`.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagcy_core::calabi::{DEFAULT_BASE_STEP, DEFAULT_FIBER_STEP, DEFAULT_KAHLER_STEP};
use flagcy_core::rootsys::parse_theta;
use flagcy_core::LieType;
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "flagcy",
    version,
    about = "Kähler–Einstein and Calabi–Yau metrics on flag manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data, δ_P, Koszul coefficients, dimension and Picard rank.
    Info {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Orbit norms symbolically, or φ, g and a at a point.
    #[command(allow_negative_numbers = true)]
    Potential {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        metric: MetricArgs,
        /// Print each orbit norm N_α(z) as a polynomial in z and z̄.
        #[arg(long, conflicts_with = "at")]
        symbolic: bool,
        /// Comma-separated complex coordinates, e.g. `0.3+0.1i,-0.2`; a single value is broadcast.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Fibre coordinate for the Calabi metric.
        #[arg(long, allow_hyphen_values = true, requires = "at")]
        xi: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification checks over seeded sample points.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Record wall time in the report (reports are then no longer reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export metric samples.
    #[command(allow_negative_numbers = true)]
    Sample {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    /// Lie type such as A3, C2, D4 or E6.
    pub lie_type: Option<String>,
    /// Nodes in Θ: `none`, `all`, `all-but-2`, or a list like `1,3`.
    #[arg(long)]
    pub theta: Option<String>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Potential weights, one per node outside Θ (default: Koszul coefficients).
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// The constant C > 0 of the Calabi profile.
    #[arg(long)]
    pub constant: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Finite-difference step in base directions.
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Fibre step, scaled by 1 + |ξ|.
    #[arg(long)]
    pub fd_fiber_step: Option<f64>,
    /// Step for the closedness check.
    #[arg(long)]
    pub fd_kahler_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    #[arg(long)]
    pub tol_einstein: Option<f64>,
    #[arg(long)]
    pub tol_ma: Option<f64>,
    #[arg(long)]
    pub tol_ricci: Option<f64>,
    #[arg(long)]
    pub tol_kahler: Option<f64>,
    #[arg(long)]
    pub tol_positivity: Option<f64>,
    #[arg(long)]
    pub tol_det: Option<f64>,
    #[arg(long)]
    pub tol_growth: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdSteps {
    pub base: f64,
    pub fiber: f64,
    pub kahler: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub einstein: f64,
    pub ma: f64,
    pub ricci_total: f64,
    pub kahlerness: f64,
    pub positivity: f64,
    pub det_constancy: f64,
    pub vertical_growth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            einstein: 1e-4,
            ma: 1e-8,
            ricci_total: 1e-4,
            kahlerness: 1e-5,
            positivity: 0.0,
            det_constancy: 1e-8,
            vertical_growth: 0.02,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(untagged)]
enum ThetaSpec {
    #[default]
    Empty,
    List(Vec<usize>),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lie_type: Option<String>,
    theta: Option<ThetaSpec>,
    weights: Option<Vec<f64>>,
    constant: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
    fd_steps: Option<FileFdSteps>,
    tolerances: Option<FileTolerances>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileFdSteps {
    base: Option<f64>,
    fiber: Option<f64>,
    kahler: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTolerances {
    einstein: Option<f64>,
    ma: Option<f64>,
    ricci_total: Option<f64>,
    kahlerness: Option<f64>,
    positivity: Option<f64>,
    det_constancy: Option<f64>,
    vertical_growth: Option<f64>,
}

/// Fully resolved and validated settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lie_type: LieType,
    pub theta: BTreeSet<usize>,
    pub weights: Option<Vec<f64>>,
    pub constant: f64,
    pub samples: usize,
    pub seed: u64,
    pub fd: FdSteps,
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

pub const DEFAULT_SAMPLES: usize = 25;
pub const DEFAULT_SEED: u64 = 1;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{name} must be positive, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<f64, Failure> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{name} must be nonnegative, got {v}")))
    }
}

fn load(path: &PathBuf) -> Result<FileConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
}

pub struct Overrides<'a> {
    pub case: &'a CaseArgs,
    pub metric: Option<&'a MetricArgs>,
    pub sweep: Option<&'a SweepArgs>,
    pub tol: Option<&'a TolArgs>,
    pub output: &'a OutputArgs,
}

pub fn resolve(o: Overrides<'_>) -> Result<RunConfig, Failure> {
    let file = match &o.case.config {
        Some(path) => load(path)?,
        None => FileConfig::default(),
    };
    let type_str = o
        .case
        .lie_type
        .clone()
        .or(file.lie_type)
        .ok_or_else(|| usage("missing Lie type"))?;
    let lie_type: LieType = type_str.parse().map_err(|e| usage(format!("{e}")))?;
    let theta = match (&o.case.theta, file.theta) {
        (Some(spec), _) => parse_theta(spec, lie_type.rank()),
        (None, Some(ThetaSpec::Text(spec))) => parse_theta(&spec, lie_type.rank()),
        (None, Some(ThetaSpec::List(list))) => {
            let joined: Vec<String> = list.iter().map(|i| i.to_string()).collect();
            parse_theta(&joined.join(","), lie_type.rank())
        }
        (None, Some(ThetaSpec::Empty)) | (None, None) => Ok(BTreeSet::new()),
    }
    .map_err(|e| usage(format!("{e}")))?;

    let metric = o.metric;
    let weights = metric.and_then(|m| m.weights.clone()).or(file.weights);
    if let Some(w) = &weights {
        for &x in w {
            positive("weight", x)?;
        }
    }
    let constant = positive(
        "constant",
        metric
            .and_then(|m| m.constant)
            .or(file.constant)
            .unwrap_or(1.0),
    )?;

    let sweep = o.sweep;
    let fs = file.fd_steps.unwrap_or_default();
    let fd = FdSteps {
        base: positive(
            "fd step",
            sweep
                .and_then(|s| s.fd_step)
                .or(fs.base)
                .unwrap_or(DEFAULT_BASE_STEP),
        )?,
        fiber: positive(
            "fibre fd step",
            sweep
                .and_then(|s| s.fd_fiber_step)
                .or(fs.fiber)
                .unwrap_or(DEFAULT_FIBER_STEP),
        )?,
        kahler: positive(
            "kahler fd step",
            sweep
                .and_then(|s| s.fd_kahler_step)
                .or(fs.kahler)
                .unwrap_or(DEFAULT_KAHLER_STEP),
        )?,
    };

    let ft = file.tolerances.unwrap_or_default();
    let d = Tolerances::default();
    let t = o.tol;
    let pick = |flag: Option<f64>, file: Option<f64>, default: f64, name: &str| {
        nonnegative(name, flag.or(file).unwrap_or(default))
    };
    let tol = Tolerances {
        einstein: pick(
            t.and_then(|t| t.tol_einstein),
            ft.einstein,
            d.einstein,
            "tol-einstein",
        )?,
        ma: pick(t.and_then(|t| t.tol_ma), ft.ma, d.ma, "tol-ma")?,
        ricci_total: pick(
            t.and_then(|t| t.tol_ricci),
            ft.ricci_total,
            d.ricci_total,
            "tol-ricci",
        )?,
        kahlerness: pick(
            t.and_then(|t| t.tol_kahler),
            ft.kahlerness,
            d.kahlerness,
            "tol-kahler",
        )?,
        positivity: pick(
            t.and_then(|t| t.tol_positivity),
            ft.positivity,
            d.positivity,
            "tol-positivity",
        )?,
        det_constancy: pick(
            t.and_then(|t| t.tol_det),
            ft.det_constancy,
            d.det_constancy,
            "tol-det",
        )?,
        vertical_growth: pick(
            t.and_then(|t| t.tol_growth),
            ft.vertical_growth,
            d.vertical_growth,
            "tol-growth",
        )?,
    };

    Ok(RunConfig {
        lie_type,
        theta,
        weights,
        constant,
        samples: sweep
            .and_then(|s| s.samples)
            .or(file.samples)
            .unwrap_or(DEFAULT_SAMPLES),
        seed: sweep
            .and_then(|s| s.seed)
            .or(file.seed)
            .unwrap_or(DEFAULT_SEED),
        fd,
        tol,
        out: o.output.out.clone().or(file.out),
        format: o.output.format.or(file.format),
    })
}
