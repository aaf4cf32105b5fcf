use thiserror::Error;

/// Errors produced by the toolkit's models and parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Coil or pose geometry for which the model is invalid.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Coincident or touching filaments.
    #[error("singularity: {0}")]
    Singularity(String),

    /// An iterative method did not reach its tolerance.
    #[error("numerical error: {message} (best estimate {best_estimate})")]
    Numerical { message: String, best_estimate: f64 },

    /// The supplied interval does not bracket a sign change.
    #[error("bracketing error: f({lo}) and f({hi}) have the same sign")]
    Bracketing { lo: f64, hi: f64 },

    /// Coupling with |M| >= sqrt(L1 L2).
    #[error("unphysical coupling: {0}")]
    Physicality(String),

    /// A value outside the range covered by a dataset.
    #[error("out of range: {0}")]
    Range(String),

    /// The requested operating point cannot be reached.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A charge rate above what the cell allows.
    #[error("safety limit: {0}")]
    Safety(String),

    /// Malformed input file. `line` is 1-based; 0 means the whole file.
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    /// (I - S) is singular.
    #[error("S to Z conversion failed: {0}")]
    Conversion(String),

    /// L/M extraction from a Z matrix failed.
    #[error("coupling extraction failed: {0}")]
    Extraction(String),

    /// Series passed to a comparison report do not share the same keys.
    #[error("report keys do not match: missing {missing:?}")]
    Report { missing: Vec<f64> },

    /// Invalid scenario, dataset or configuration content.
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
