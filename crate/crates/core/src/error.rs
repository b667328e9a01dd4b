use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NonInvertible { a: BigInt, m: BigInt },

    #[error("invalid modulus {0}")]
    InvalidModulus(BigInt),

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: BigInt, b: BigInt },

    #[error("numerator must be nonzero")]
    ZeroNumerator,

    #[error("surgery coefficient {p}/{q} has a zero entry")]
    ZeroEntry { p: BigInt, q: BigInt },

    #[error("index ({j}, {i}) out of range for expansion of length {len}")]
    IndexOutOfRange { j: usize, i: usize, len: usize },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{c} is not a positive divisor of {r}")]
    NotADivisor { c: usize, r: usize },

    #[error("invalid level {0}: expected an odd integer >= 3")]
    InvalidLevel(usize),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("enumeration needs {needed} terms, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}
