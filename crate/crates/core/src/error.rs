use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    /// The hyperplane only touches the polytope (one side thinner than the
    /// geometric tolerance). Callers resample.
    #[error("degenerate split: hyperplane does not cut the interior")]
    DegenerateSplit,

    #[error("rejection sampling exceeded {0} proposals")]
    RejectionCap(usize),

    #[error("nonpositive hitting rate {0} for a live cell")]
    NonPositiveRate(f64),

    #[error("split depth exceeded {0}")]
    DepthExceeded(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("window is not contained in the tessellation window")]
    NotContained,

    #[error("divergent quantity: {0}")]
    Divergent(String),

    #[error("quadrature did not converge: estimate {value}, error {error}")]
    Quadrature { value: f64, error: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
