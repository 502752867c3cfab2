use alloc::string::String;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("zero vector has no transvection")]
    ZeroVector,

    #[error("genus must be at least {min}, got {got}")]
    GenusTooSmall { min: usize, got: usize },

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("order exceeds cap {cap}")]
    OrderExceedsCap { cap: u64 },

    #[error("constraint solver found no chain in box {bound} ({reason})")]
    ChainSolve { bound: i64, reason: String },

    #[error("curve system check failed: {0}")]
    CurveSystem(String),

    #[error("classes {i} and {j} do not commute (pairing {pairing})")]
    NonCommuting { i: usize, j: usize, pairing: String },

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group enumeration exceeded cap {cap} (attained size {attained})")]
    CapExceeded { cap: usize, attained: usize },

    #[error("generators disagree on genus or modulus")]
    MixedGenerators,

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: i64, count: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
