use thiserror::Error;

/// Errors raised by the operator laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operators live on different truncation contexts")]
    ContextMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("band too wide for context (band {band}, cutoff {cutoff})")]
    BandTooWide { band: usize, cutoff: usize },
    #[error("window {window} too large (limit {limit})")]
    WindowTooLarge { window: usize, limit: usize },
    #[error("non-finite entries in operator")]
    NonFinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("context is not graded")]
    Ungraded,
    #[error("operator is not hermitian (residual {0:.3e})")]
    NotHermitian(f64),
    #[error("operator is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("base operator singular; supply λ or R₀")]
    SingularBase,
    #[error("operator block is singular")]
    Singular,
    #[error("ill-conditioned kernel count: no spectral gap around threshold")]
    IllConditioned,
    #[error("insufficient range for slope fit (cutoff {0} < 32)")]
    InsufficientRange(usize),
    #[error("connection solve failed (residual {0:.3e})")]
    ConnectionSolve(f64),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("loop family is not closed: f(2π) = {0}")]
    UnclosedLoop(f64),
    #[error("face is not contained in chart {0}")]
    FaceOutsideChart(usize),
    #[error("missing partition of unity")]
    MissingPartition,
    #[error("grid size {0} is not a power of two")]
    GridSize(usize),
    #[error("linear algebra failure: {0}")]
    Linalg(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
