use thiserror::Error;

/// Errors raised by the arithmetic and ramification routines.
///
/// Nothing in this crate rounds or guesses: when a computation cannot be
/// certified exactly (not enough series terms, a failed exact division) it
/// surfaces as one of these variants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("insufficient precision: need terms up to u^{needed}, have O(u^{available})")]
    Precision { needed: i64, available: i64 },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("coefficient domains differ")]
    DomainMismatch,

    #[error("Witt length {len} exceeds the configured cap {cap}")]
    WittLengthCap { len: usize, cap: usize },

    #[error("Frobenius is only defined here over F_p-algebras")]
    FrobeniusNotCharP,

    #[error("exact division by p^{power} failed in component {index}")]
    Divisibility { index: usize, power: u32 },

    #[error("not a unit: {0}")]
    NotUnit(String),

    #[error("point {0} is not rational over the working field; enlarge --d")]
    NonRational(String),

    #[error("data is not regular on U: {0}")]
    NotRegular(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
