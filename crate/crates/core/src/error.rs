use thiserror::Error;

/// Errors raised by the engine.
///
/// Every arithmetic failure here is a hard error: an inexact division or a
/// leftover residual means the input was not an element of the integral
/// Schubert span, and results are never truncated to hide that.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("simple reflection s{letter} out of range for rank {n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid transposition t({i},{j}) for rank {n}")]
    InvalidTransposition { i: usize, j: usize, n: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("linear form is not in the span of the roots (coefficient sum {0})")]
    NotInRootSpan(String),

    #[error("division by the zero linear form")]
    DivisionByZero,

    #[error("polynomial {dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("{u} is not special {k}-superior to {w}")]
    NotSuperior { u: String, w: String, k: usize },

    #[error("function is not in the Schubert span: {0}")]
    OutsideSpan(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
