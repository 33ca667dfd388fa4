//! Error type shared by every module of the core crate.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("map is not order-preserving")]
    NotOrderPreserving,
    #[error("map is not injective")]
    NotInjective,
    #[error("substitution must fix theta")]
    ThetaMoved,
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("chain is not global: first projection misses {0}")]
    NotGlobal(usize),
    #[error("chain is not maximal")]
    NotMaximal,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("vertex {0} is not an inner vertex")]
    NotInner(usize),
    #[error("vertex {0} admits no face factorization")]
    NoFaceFactor(usize),
    #[error("cap {cap} exceeded: {what}")]
    CapExceeded { cap: usize, what: String },
    #[error("incompatible form assignment: {0}")]
    Incompatible(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
