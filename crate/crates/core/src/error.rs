use thiserror::Error;

/// A single `(y, estimate)` sample recorded while realizing a limit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LimitSample {
    pub h: f64,
    pub value: f64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("index {index} out of range for basis of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("limit did not converge: {what}")]
    Convergence { what: String, samples: Vec<LimitSample> },

    #[error("extrapolation failed: {0}")]
    Extrapolation(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn convergence(what: impl Into<String>, samples: Vec<LimitSample>) -> Self {
        Error::Convergence { what: what.into(), samples }
    }

    /// True for errors caused by a numerical limit that failed to settle.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::Extrapolation(_) | Error::Solver(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
