use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch { expected: Vec<usize>, got: Vec<usize> },

    #[error("dimension not divisible by {divisor}: {dim} = {value}")]
    DimensionNotDivisible { dim: &'static str, value: usize, divisor: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid value for {field}: {reason}")]
    InvalidValue { field: &'static str, reason: String },

    #[error("foreground out of bounds: rows {lo:.2}..{hi:.2} exceed frame height {height}")]
    ForegroundOutOfBounds { lo: f64, hi: f64, height: usize },

    #[error("no correlation peak: images are flat or degenerate")]
    NoCorrelationPeak,

    #[error("non-finite loss at step {step}: {detail}")]
    NonFiniteLoss { step: usize, detail: String },

    #[error("checkpoint format error: {0}")]
    CheckpointFormat(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("image error: {0}")]
    Image(#[from] image::ImageError),
}

pub type Result<T> = std::result::Result<T, Error>;
