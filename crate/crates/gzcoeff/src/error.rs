//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The discriminant is not a supported negative odd fundamental discriminant.
    #[error("invalid discriminant {0}: need D < -4, D = 1 mod 4, D squarefree")]
    InvalidDiscriminant(i64),
    /// Two forms or ideals of different discriminants were combined.
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(String, String),
    /// An argument violates a documented precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A value was expected to be prime.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// A parameter search ran past its bound without a hit.
    #[error("search bound exceeded: {0}")]
    SearchExhausted(String),
    /// Polynomial degree guard (m + 2k > 64) or a non-polynomial Rodrigues quotient.
    #[error("polynomial: {0}")]
    Polynomial(String),
    /// A root needed by the character construction does not exist in the ground ring.
    #[error("no root in the p-adic ground ring: {0}")]
    NoRoot(String),
    /// Value-mode mismatch, such as an exact request for h > 1.
    #[error("value mode: {0}")]
    Mode(String),
    /// Not enough p-adic precision left to certify a result.
    #[error("precision exhausted: {0}")]
    Precision(String),
    /// Division by zero or by a non-unit where a unit was required.
    #[error("division by zero")]
    DivisionByZero,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
