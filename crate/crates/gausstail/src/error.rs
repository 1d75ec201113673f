use std::fmt;

/// Errors produced by the series, moment, model and evaluation layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (e.g. evaluating a log-polynomial at x <= 0).
    Domain(String),
    /// The operation was called in a way its contract forbids
    /// (direction mismatch, overlapping intervals, unknown builtin, ...).
    Usage(String),
    /// More series terms were requested than the truncated representation holds.
    InsufficientTruncation { requested: u64, available: u64 },
    /// The requested moment integral diverges.
    DivergentMoment(String),
    /// Derivative order beyond the supported range.
    UnsupportedOrder { requested: usize, max: usize },
    /// The model lacks the data needed for this operation (e.g. no membership predicate).
    Unsupported(String),
    /// Adaptive quadrature could not reach the requested accuracy.
    /// Carries the partial result and its estimated error.
    AccuracyFailure { value: f64, err: f64, tol: f64 },
    /// A set construction is inconsistent (bound crossing, seam mismatch, ...).
    InvalidSet(String),
    /// A serialized object or a CLI shorthand could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::InsufficientTruncation {
                requested,
                available,
            } => write!(
                f,
                "insufficient truncation: order {requested} requested, only {available} available"
            ),
            Error::DivergentMoment(msg) => write!(f, "divergent moment: {msg}"),
            Error::UnsupportedOrder { requested, max } => {
                write!(f, "derivative order {requested} unsupported (max {max})")
            }
            Error::Unsupported(msg) => write!(f, "unsupported operation: {msg}"),
            Error::AccuracyFailure { value, err, tol } => write!(
                f,
                "quadrature accuracy failure: value {value:e} with estimated error {err:e} > tolerance {tol:e}"
            ),
            Error::InvalidSet(msg) => write!(f, "invalid set: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
