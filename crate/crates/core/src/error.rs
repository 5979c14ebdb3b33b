use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {0} is larger than the supported table size")]
    FieldTooLarge(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("zero polynomial is not allowed here")]
    ZeroInput,
    #[error("constant polynomial is not allowed here")]
    ConstantInput,
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("element is not {0}-torsion")]
    NotTorsion(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("bound {needed} exceeds degree cap {cap}")]
    DegreeCap { needed: usize, cap: usize },
    #[error("enumeration of {needed} elements exceeds cap {cap}")]
    EnumerationCap { needed: u64, cap: u64 },
    #[error("empty sample")]
    EmptySample,
    #[error("precision bookkeeping violated: {0}")]
    Precision(String),
    #[error("reconstruction obstructed at prime power {0}")]
    ReconstructionObstructed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error at {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
