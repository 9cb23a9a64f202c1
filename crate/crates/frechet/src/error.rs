use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unsupported norm: p = {0} (only p = 2 is implemented)")]
    UnsupportedNorm(f64),

    #[error("parameter {0} outside [0, 1]")]
    ParamOutOfRange(f64),

    #[error("polynomial is identically zero on the interval")]
    IdenticallyZero,

    #[error("whole arc lies at the queried distance")]
    WholeArcAtDistance,

    #[error("solution cluster could not be separated at tolerance {0:.3e}")]
    ClusterUnresolved(f64),

    #[error("delta {0} is critical for the free-space decomposition")]
    CriticalDelta(f64),

    #[error("probe points are all within tolerance of the level set")]
    AmbiguousProbe,

    #[error("inconsistent subcell configuration: {0}")]
    InconsistentConfiguration(String),

    #[error("delta {delta} is near-critical after {retries} perturbation retries")]
    NearCritical { delta: f64, retries: u32 },

    #[error("degenerate input: both curves collapse to points")]
    DegenerateZero,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
