//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    UnsupportedSystem(String),

    #[error("inconsistent positive system: {0}")]
    InconsistentPositiveSystem(String),

    #[error("invalid causal datum: {0}")]
    InvalidDatum(String),

    #[error("weyl group enumeration capped: rank {0} exceeds 4")]
    WeylCap(usize),

    #[error("restricted system shape violation: {0}")]
    ShapeViolation(String),

    #[error("inconsistent multiplicity split: {0}")]
    BadSplit(String),

    #[error("dimension cap for exact H-representation: dim {0} exceeds 4")]
    DimCap(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("not dominant for the compact positive system")]
    NotDominant,

    #[error("lambda+rho outside the convergence domain of the c-function")]
    OutsideDomain,

    #[error("oracle supports the rank-1 group case only: {0}")]
    OracleUnsupported(String),

    #[error("ratio statistics need >= 3 finite values of equal length: {0}")]
    BadRatioInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown case label `{0}`")]
    UnknownCase(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
