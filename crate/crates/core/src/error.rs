//! Error type shared by all kernels.

use thiserror::Error;

/// Errors produced by the symbolic kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values live over different variable tables.
    #[error("variable table mismatch: {0}")]
    ContextMismatch(String),

    /// A query that is undefined on its input (degree of 0, leading term of 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An invalid matrix or scenario specification.
    #[error("invalid spec: {0}")]
    Spec(String),

    /// A modular evaluation hit a coefficient denominator divisible by the prime.
    #[error("prime {0} divides a coefficient denominator; retry with a new prime")]
    PrimeClash(u64),

    /// A configured resource cap was exceeded; partial state is discarded.
    #[error("resource cap exceeded: {0}")]
    Budget(String),

    /// An internal invariant failed; indicates a bug, never a mathematical FAIL.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
