//! Error type shared by the whole engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CasError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in Z/pZ")]
    DivisionByZero,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("expected a homogeneous ideal: {0}")]
    NotHomogeneous(String),
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("arithmetic genus is only defined for curves (projective dimension 1), got {0}")]
    NotACurve(i64),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("{0}")]
    Geometry(String),
    #[error("intersection model: {0}")]
    Model(String),
    #[error("degreewise image did not stabilize within degree {0}")]
    NonStabilized(usize),
    #[error("construction retries exhausted after {0} attempts: {1}")]
    RetriesExhausted(u32, String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CasError>;
