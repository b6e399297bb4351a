use thiserror::Error;

use crate::arith::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("{element} is not in the radical of ({ideal})")]
    NotInRadical { element: Int, ideal: Int },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("operation requires a finite module")]
    InfiniteModule,

    #[error("operation is not defined for the Prufer group")]
    PruferUnsupported,

    #[error("arithmetic overflow")]
    Overflow,

    #[error("cannot factor {0}: cofactor exceeds the trial-division bound")]
    FactorBound(Int),

    #[error("open cover precondition violated: {0}")]
    CoverPrecondition(String),

    #[error("open set is not contained in the section's domain")]
    NotContained,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A property that must hold on the instance failed. Carries a counterexample.
    #[error("violation: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
