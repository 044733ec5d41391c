use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("vector {index} is linearly dependent on its predecessors (residual {residual:.3e})")]
    LinearDependence { index: usize, residual: f64 },
    #[error("index out of range: {what} = {index}, valid range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("unsupported (d, t) = ({d}, {t}): only d = 2, 1 <= t <= 6 is implemented")]
    Unsupported { d: usize, t: usize },
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("invalid Young tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(String),
    #[error("quadrature did not converge: refinement delta {delta:.3e} exceeds {limit:.1e}")]
    QuadratureNotConverged { delta: f64, limit: f64 },
    #[error("the raw and normalized weight conventions disagree; choose one explicitly")]
    ConventionRequired,
    #[error(
        "neither convention matches the Monte-Carlo oracle \
         (raw delta {delta_raw:.3e}, normalized delta {delta_normalized:.3e}, tolerance {tolerance:.3e})"
    )]
    ConventionUndetermined {
        delta_raw: f64,
        delta_normalized: f64,
        tolerance: f64,
    },
    #[error(
        "sample budget {samples} exhausted while the rank was still growing (last rank {rank})"
    )]
    InsufficientSamples { samples: usize, rank: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
