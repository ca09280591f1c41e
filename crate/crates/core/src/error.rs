use thiserror::Error;

/// Errors raised by the linear algebra kernels and the bound evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} exceeds {limit:.3e})")]
    NotHermitian { asymmetry: f64, limit: f64 },

    #[error("{method} did not converge (residual {residual:.3e})")]
    NoConvergence { method: &'static str, residual: f64 },

    #[error("matrix has eigenvalue {value:.3e} below the positivity floor")]
    NegativeEigenvalue { value: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("operand is not positive semidefinite: {0}")]
    NotPositive(String),

    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("product is not a contraction (norm {0})")]
    NotContraction(f64),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("scheme {0} needs f and g power functions")]
    SchemeParameterMissing(String),

    #[error("expected a 2x2 block partition, got {0} blocks per side")]
    NotTwoByTwo(usize),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
