//! Error type shared by every module.

use thiserror::Error;

/// Failures raised by the algebra and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("resonant weight: {0}")]
    ResonantWeight(String),
    #[error("module is not finite-dimensional")]
    NonFiniteDim,
    #[error("integrand is not integrable: {0}")]
    NonIntegrable(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("capability exceeded: {0}")]
    CapabilityExceeded(String),
    #[error("unknown kind: {0}")]
    UnknownKind(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
