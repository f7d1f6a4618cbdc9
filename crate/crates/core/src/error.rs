use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not in GL2(Z): determinant {det} is not +1 or -1")]
    NotUnimodular { det: BigInt },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degenerate spectrum: discriminant {disc} is zero or a perfect square")]
    DegenerateSpectrum { disc: BigInt },

    #[error("zero is not a valid input here")]
    Zero,

    #[error("{disc} is not a discriminant (must be nonzero, non-square, and 0 or 1 mod 4)")]
    InvalidDiscriminant { disc: BigInt },

    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: BigInt, right: BigInt },

    #[error("form ({a}, {b}, {c}) is not primitive")]
    NotPrimitive { a: BigInt, b: BigInt, c: BigInt },

    #[error("definite form ({a}, {b}, {c}) must have a > 0")]
    NegativeDefinite { a: BigInt, b: BigInt, c: BigInt },

    #[error("expected a {expected} form, got discriminant {disc}")]
    WrongSignature {
        expected: &'static str,
        disc: BigInt,
    },

    #[error("characteristic polynomials differ: {left} vs {right}")]
    CharPolyMismatch { left: String, right: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{what} is too large for exact desk-scale computation")]
    TooLarge { what: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
