//! Error type shared by every module.
//!
//! The variants are deliberately coarse: callers (and the CLI exit-code
//! mapping) care about the *category* of failure — bad input, unsupported
//! configuration, exhausted search, blown budget — not about which inner
//! routine tripped.  The payloads carry enough context to reproduce the
//! failure.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    /// A modulus that is not a prime number was supplied.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Two operands live over different prime fields.
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    /// Vector/matrix shapes do not line up.
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// Attempt to invert zero or a singular matrix.
    #[error("inversion of a non-invertible element: {0}")]
    NotInvertible(String),

    /// The requested (kind, rank) pair is outside the supported tables.
    #[error("unsupported root system: type {kind} rank {rank}")]
    UnsupportedRootSystem { kind: char, rank: usize },

    /// The operation is meaningful but cannot be carried out for this
    /// (type, rank, p) combination, e.g. no faithful restricted
    /// representation is available for the p-th power map.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    /// An enumeration exceeded its point or dimension budget.
    #[error("budget exceeded: {context} (budget {budget})")]
    BudgetExceeded { context: String, budget: u64 },

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The input falls in the excluded hypothesis of the statement being
    /// checked (distinct from an exhausted search).
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// A witness search ran to completion without success at every prime
    /// in the escalation ladder.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// A support-clearing pass could not empty the forbidden set.
    #[error("support clearing failed; residual roots: {residual}")]
    ClearSupportFailed { residual: String },

    /// Malformed CLI/scenario parameters.
    #[error("usage: {0}")]
    Usage(String),

    /// Serialization or I/O failure while emitting reports.
    #[error("io: {0}")]
    Io(String),
}

impl LieError {
    /// Map an error to the process exit code contract:
    /// 2 for usage errors, 3 for resource exhaustion, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LieError::Usage(_) => 2,
            LieError::BudgetExceeded { .. } => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for LieError {
    fn from(e: std::io::Error) -> Self {
        LieError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for LieError {
    fn from(e: serde_json::Error) -> Self {
        LieError::Io(e.to_string())
    }
}
