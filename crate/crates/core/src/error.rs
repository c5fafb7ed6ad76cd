use thiserror::Error;

/// Errors raised by curve construction, density sampling and the boundary
/// operators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size N={0} is invalid: N must be even and at least 8")]
    InvalidGridSize(usize),

    #[error("degenerate curve parameters: {0}")]
    DegenerateCurve(String),

    #[error("curve is oriented clockwise; only counterclockwise curves are accepted")]
    Clockwise,

    #[error("node index {index} out of range for a grid with {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("density is incompatible with the curve: {0}")]
    IncompatibleDensity(String),

    #[error("length mismatch: expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("evaluation point coincides with grid node {0}; use the on-curve trace instead")]
    PointOnCurve(usize),

    #[error("node {0} is a singular node of the density")]
    SingularNode(usize),

    #[error("derivative of a samples-only density needs N >= 16 (got N={0})")]
    DerivativeUnavailable(usize),

    #[error("invalid limit schedule: {0}")]
    InvalidSchedule(String),

    #[error("extrapolation is ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("operation requires the unit circle")]
    NotUnitCircle,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
