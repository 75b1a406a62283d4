use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

/// Errors raised by the geometry routines.
///
/// Every function validates its domain up front; no routine returns a silent
/// NaN for an out-of-domain argument.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("{func}: argument {value} outside domain ({expected})")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{func}: 1 - gamma*B(theta) vanishes at theta = {theta}")]
    DivisionDegenerate { func: &'static str, theta: f64 },

    #[error("{func}: pole at theta = {theta}, x = {x}")]
    Pole { func: &'static str, theta: f64, x: f64 },

    #[error("{func}: line does not meet the level set on this branch (sqrt v = {sqrt_v})")]
    NoIntersection { func: &'static str, sqrt_v: f64 },

    #[error("no sign change on [{lo}, {hi}]: residuals {f_lo} and {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no convergence after {iterations} iterations; best bracket [{lo}, {hi}]")]
    MaxIterations { iterations: usize, lo: f64, hi: f64 },

    #[error("objective is not finite at node {node} (value {value})")]
    NonFiniteSample { node: f64, value: f64 },

    #[error("both points lie on the boundary v = 0 (x0 = {x0}, x1 = {x1})")]
    BoundaryPair { x0: f64, x1: f64 },

    #[error("strike {strike} equals spot: at-the-money limit is not covered")]
    AtTheMoney { strike: f64 },

    #[error("reduced line passes through (0, 1): zero distance")]
    DegenerateDistance,

    #[error("invalid {what}: {value}")]
    InvalidInput { what: &'static str, value: f64 },
}

impl GeomError {
    /// Stable machine-readable name of the error variant.
    pub fn name(&self) -> &'static str {
        match self {
            GeomError::Domain { .. } => "domain",
            GeomError::DivisionDegenerate { .. } => "division-degenerate",
            GeomError::Pole { .. } => "pole",
            GeomError::NoIntersection { .. } => "no-intersection",
            GeomError::NoSignChange { .. } => "no-sign-change",
            GeomError::MaxIterations { .. } => "max-iterations",
            GeomError::NonFiniteSample { .. } => "non-finite-sample",
            GeomError::BoundaryPair { .. } => "boundary-pair",
            GeomError::AtTheMoney { .. } => "at-the-money",
            GeomError::DegenerateDistance => "degenerate-distance",
            GeomError::InvalidInput { .. } => "invalid-input",
        }
    }
}

pub(crate) fn domain(func: &'static str, value: f64, expected: &'static str) -> GeomError {
    GeomError::Domain {
        func,
        value,
        expected,
    }
}
