use thiserror::Error;

/// Errors produced by the algebra routines and the fixture loaders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },

    #[error("minor size {k} out of range 1..={max}")]
    MinorSizeOutOfRange { k: usize, max: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("p^n - 1 = {size} exceeds the size ceiling {ceiling}")]
    TooLarge { size: u128, ceiling: u128 },

    #[error("elementary divisor 0 encountered: the edge-map matrix is rank deficient")]
    ZeroDivisor,

    #[error("elementary divisor {divisor} is not a power of {prime}")]
    NotPrimePower { divisor: String, prime: u64 },

    #[error("denominator constant term must be +1 or -1, found {0}")]
    NonUnitDenominator(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("ring map is not well defined: {0}")]
    IllDefinedMap(String),

    #[error("polynomial is not reduced modulo the relations: {0}")]
    IllFormed(String),

    #[error("group order {0} is not a power of 2")]
    NotTwoPower(u64),

    #[error("action order does not divide the group order {0}")]
    ActionOrder(u64),

    #[error("matrix for {0} is not orthogonal")]
    NotOrthogonal(String),

    #[error("closure has {found} elements, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("element set is not closed under multiplication")]
    NotASubgroup,

    #[error("isotropy group {0} is not elementary abelian")]
    IsotropyNotInFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
