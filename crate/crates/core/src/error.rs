use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for rank {n}")]
    BadIndex { index: i64, n: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("element has nonzero rho-power {shift}; expected shift 0")]
    ShiftNonzero { shift: i64 },

    #[error("operation only supported for rank 2 (got rank {n})")]
    RankUnsupported { n: usize },

    #[error("cannot specialize at q = 0")]
    ZeroSpecialization,

    /// The Bernstein correction term did not divide exactly. This means the
    /// commutation rule is wrong and must never happen.
    #[error("commutation correction is not a Laurent polynomial (i = {i}, lambda = {lambda:?})")]
    NonIntegralCorrection { i: usize, lambda: Vec<i64> },

    #[error("truncation bound {bound} exceeded (needed degree {needed})")]
    TruncationExceeded { bound: usize, needed: usize },

    #[error("operation only supported for dimension 2 (got {dim})")]
    DimUnsupported { dim: usize },

    #[error("invalid window {0:?}: residues not distinct or shift not integral")]
    InvalidWindow(Vec<i64>),

    #[error("word {0:?} is not alternating")]
    NotAlternating(Vec<usize>),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("type error: {0}")]
    Type(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("module is missing data: {0}")]
    Module(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
