//! Batch front end: input loading, grid parsing, and the three commands
//! (expand / eval / verify) as library functions. The `gausstail` binary is
//! a thin argument parser over these.
//!
//! Exit-code contract (stable): 0 success (and a passing verify verdict),
//! 1 failing verdict or other error, 2 parse failure, 3 insufficient series
//! truncation, 4 oracle accuracy failure. Data goes to stdout (or `--out`),
//! diagnostics to stderr.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::{phi_montecarlo, phi_quadrature, phi_univariate};
use crate::expansion::{
    expand_at_infinity, expand_at_zero, verify_remainder, EvalReport, ExpansionResult,
};
use crate::series::Direction;
use crate::setmodel::SetModel;

/// Environment variable bounding internal parallelism (threads ≥ 1).
pub const THREADS_ENV: &str = "GAUSSTAIL_THREADS";

/// Applies GAUSSTAIL_THREADS to the global thread pool. A no-op when the
/// variable is unset; safe to call once at process start.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.parse().ok().filter(|t| *t >= 1).ok_or_else(|| {
        Error::Parse(format!(
            "{THREADS_ENV} must be an integer >= 1, got {raw:?}"
        ))
    })?;
    // An already-initialized pool keeps its size; that is fine for tests.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// Loads a set description: a JSON file path if one exists at `spec` (or it
/// looks like a path), otherwise the builtin shorthand `name:key=val,...`.
pub fn load_input(spec: &str) -> Result<SetModel> {
    let looks_like_path = spec.contains('/') || spec.ends_with(".json") || Path::new(spec).exists();
    if looks_like_path {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| Error::Parse(format!("cannot read {spec}: {e}")))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad set description: {e}")))
    } else {
        SetModel::parse_shorthand(spec)
    }
}

/// Parses a time grid: a single value `0.5`, a comma list `0.1,1,10`, or a
/// log-spaced range `1e-2..1e-6` (default: one point per decade, inclusive).
pub fn parse_grid(spec: &str, points: Option<usize>) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::Parse(msg);
    if let Some((lo, hi)) = spec.split_once("..") {
        let start: f64 = lo
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad grid start {lo:?}")))?;
        let stop: f64 = hi
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad grid stop {hi:?}")))?;
        if !start.is_finite() || !stop.is_finite() || start <= 0.0 || stop <= 0.0 {
            return Err(bad("grid endpoints must be positive".into()));
        }
        let decades = (stop.log10() - start.log10()).abs();
        let count = points.unwrap_or((decades.round() as usize).max(1) + 1);
        if count < 2 && start != stop {
            return Err(bad("log grids need at least two points".into()));
        }
        let count = count.max(1);
        let values = (0..count)
            .map(|i| {
                let u = if count == 1 {
                    0.0
                } else {
                    i as f64 / (count - 1) as f64
                };
                10f64.powf(start.log10() + u * (stop.log10() - start.log10()))
            })
            .collect();
        return Ok(values);
    }
    if spec.contains(',') {
        return spec
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(format!("bad grid value {part:?}")))
            })
            .collect();
    }
    let single: f64 = spec
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad grid value {spec:?}")))?;
    Ok(vec![single])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(Method::Quadrature),
            "mc" => Ok(Method::MonteCarlo),
            other => Err(Error::Parse(format!(
                "unknown method {other:?} (expected quad or mc)"
            ))),
        }
    }
}

pub fn parse_direction(s: &str) -> Result<Direction> {
    match s {
        "zero" | "0" => Ok(Direction::AtZero),
        "infinity" | "inf" => Ok(Direction::AtInfinity),
        other => Err(Error::Parse(format!(
            "unknown direction {other:?} (expected zero or infinity)"
        ))),
    }
}

/// Serialized payload of `expand`.
#[derive(Serialize, Deserialize)]
pub struct ExpandOutput {
    pub input: String,
    pub direction: Direction,
    pub order: u64,
    pub expansion: ExpansionResult,
}

/// Runs an expansion and renders the structured-text report.
pub fn run_expand(input: &str, direction: Direction, order: u64) -> Result<String> {
    let model = load_input(input)?;
    let expansion = match direction {
        Direction::AtZero => expand_at_zero(&model, order)?,
        Direction::AtInfinity => expand_at_infinity(&model, order)?,
    };
    let out = ExpandOutput {
        input: input.to_string(),
        direction,
        order,
        expansion,
    };
    Ok(serde_json::to_string(&out).expect("expansion serializes") + "\n")
}

/// Evaluation settings for `eval`.
#[derive(Debug, Clone, Copy)]
pub struct EvalSettings {
    pub method: Method,
    pub tol: f64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            method: Method::Quadrature,
            tol: 1e-11,
            samples: 1_000_000,
            seed: 7,
        }
    }
}

/// Runs Φ evaluations over the grid and renders the comma-separated table
/// `t,value,err` at 17 significant digits.
pub fn run_eval(input: &str, grid: &[f64], settings: EvalSettings) -> Result<String> {
    let model = load_input(input)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &t in grid {
        let (value, err) = match settings.method {
            Method::Quadrature => {
                if model.is_univariate() {
                    let phi = phi_univariate(model.intervals()?, 0.0, t)?;
                    (phi, 1e-15)
                } else {
                    let out = phi_quadrature(&model, t, settings.tol)?;
                    (out.value, out.err)
                }
            }
            Method::MonteCarlo => {
                let out = phi_montecarlo(&model, t, settings.samples, settings.seed)?;
                (out.estimate, out.stderr)
            }
        };
        rows.push(format!("{t:.16e},{value:.16e},{err:.16e}"));
    }
    Ok(format!("t,value,err\n{}\n", rows.join("\n")))
}

/// Serialized payload of `verify`.
#[derive(Serialize, Deserialize)]
pub struct VerifyOutput {
    pub input: String,
    pub direction: Direction,
    pub order: u64,
    pub report: EvalReport,
}

/// Expands, then checks the remainder decay along the grid. The rendered
/// report carries the pass/fail verdict.
pub fn run_verify(
    input: &str,
    direction: Direction,
    order: u64,
    grid: &[f64],
) -> Result<(String, bool)> {
    let model = load_input(input)?;
    let expansion = match direction {
        Direction::AtZero => expand_at_zero(&model, order)?,
        Direction::AtInfinity => expand_at_infinity(&model, order)?,
    };
    // Normalization may reduce the series ramification (and with it the
    // index scale); clamp so the partial sum covers everything computed.
    let effective = order.min(expansion.series.truncation_order());
    let report = verify_remainder(&model, &expansion, effective, grid)?;
    let pass = report.verdict.pass;
    let out = VerifyOutput {
        input: input.to_string(),
        direction,
        order,
        report,
    };
    Ok((
        serde_json::to_string(&out).expect("report serializes") + "\n",
        pass,
    ))
}

/// Stable exit code for an error (see the module docs).
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 2,
        Error::InsufficientTruncation { .. } => 3,
        Error::AccuracyFailure { .. } => 4,
        _ => 1,
    }
}
