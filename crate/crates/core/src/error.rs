use thiserror::Error;

/// Errors produced by the exact arithmetic and umbral machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at q = {point}")]
    PoleAtPoint { point: String },

    #[error("composition {parts:?} sums to {sum}, expected {expected}")]
    CompositionMismatch {
        parts: Vec<usize>,
        sum: usize,
        expected: usize,
    },

    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("series is not divisible by t^{power}: coefficient of t^{index} is nonzero")]
    NotDivisible { power: usize, index: usize },

    #[error("polynomial of degree {degree} needs a series cap above {degree}, got cap {cap}")]
    CapTooSmall { degree: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
