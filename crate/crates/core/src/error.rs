use thiserror::Error;

/// Errors raised by the toolkit. Variants map onto the precondition
/// failures of the individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("irreducible polynomial search exceeded its budget ({0} candidates)")]
    SearchBudget(u64),
    #[error("level {sub} does not divide level {level}")]
    LevelMismatch { sub: u32, level: u32 },
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("character is not defined at level {level}: {denominator} does not divide {group_order}")]
    NotRealizable {
        denominator: u64,
        group_order: u64,
        level: u32,
    },
    #[error("zero is not a valid argument: {0}")]
    ZeroArgument(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the set S_m is empty at level {0}")]
    EmptySet(u32),
    #[error("exponent cap violated: |{value}| > {cap} at q = {q}")]
    ExponentCap { value: i64, cap: i64, q: u64 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
