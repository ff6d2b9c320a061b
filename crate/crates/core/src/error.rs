use thiserror::Error;

/// Errors raised while constructing probability objects or evaluating measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has no rows or no columns")]
    Empty,

    #[error("matrix is not rectangular: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry ({x}, {y}) is not finite")]
    NonFinite { x: usize, y: usize },

    #[error("row {index} sums to {sum}, expected 1")]
    NonStochasticRow { index: usize, sum: f64 },

    #[error("entry ({x}, {y}) is negative")]
    NegativeEntry { x: usize, y: usize },

    #[error("entry ({x}, {y}) exceeds 1")]
    EntryAboveOne { x: usize, y: usize },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("invalid order alpha = {value}: {reason}")]
    InvalidAlpha { value: f64, reason: &'static str },

    #[error("invalid Gallager parameter rho = {value}: {reason}")]
    InvalidRho { value: f64, reason: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("row {0} of the conditional distribution has no mass")]
    ZeroRow(usize),

    #[error("every input symbol received zero mass")]
    AllMassVanished,

    #[error("initial distribution has zero mass at ({x}, {y}) where the channel is positive")]
    ZeroSupportInit { x: usize, y: usize },

    #[error("grid has {points} points, limit is {limit}")]
    GridTooLarge { points: u128, limit: u64 },

    #[error("no convergence within {limit} iterations")]
    MaxIterationsExceeded { limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
