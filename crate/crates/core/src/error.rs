use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<usize>),

    #[error("partition {partition} does not fit in a rectangle with {rows} rows and {cols} columns")]
    OutsideRectangle {
        partition: String,
        rows: usize,
        cols: usize,
    },

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("weight {weight} has level {found}, expected level {expected}")]
    LevelMismatch {
        weight: String,
        found: usize,
        expected: usize,
    },

    #[error("weights {left} and {right} belong to different categories")]
    CategoryMismatch { left: String, right: String },

    #[error("weight {weight} has degree {degree} mod {rank}, which does not match index {index}")]
    DegreeMismatch {
        weight: String,
        degree: usize,
        rank: usize,
        index: i64,
    },

    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(usize),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(usize, usize),

    #[error("precision of {bits} bits is insufficient: unitarity residual {residual:e}")]
    InsufficientPrecision { bits: usize, residual: f64 },

    #[error("Verlinde sum for {triple} is {deviation:e} away from the nearest integer (tolerance {tolerance:e})")]
    ToleranceExceeded {
        triple: String,
        deviation: f64,
        tolerance: f64,
    },

    #[error("algebra object must contain the vacuum exactly once, found {0} copies")]
    NotConnected(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
