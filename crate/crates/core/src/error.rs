use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term precondition violated: {0}")]
    ConstantTerm(&'static str),

    #[error("series is not in L0 (zero constant term)")]
    NotInL0,

    #[error("no composite inverse: series is not in L1")]
    NoCompositeInverse,

    #[error("series is not in L1 (needs zero constant term and invertible linear term)")]
    NotInL1,

    #[error("coefficient {0} is not invertible in the coefficient ring")]
    NotInvertible(String),

    #[error("bell index out of range: n = {n}, k = {k} (need 1 <= k <= n)")]
    BellIndex { n: usize, k: usize },

    #[error("mina index out of range: n = {n}, k = {k} (need n >= 1, k < n)")]
    MinaIndex { n: usize, k: usize },

    #[error("entry ({n}, {k}) keeps a power of x1 in its denominator")]
    NotPolynomial { n: usize, k: usize },

    #[error("assignment is missing variable x{0}")]
    MissingVariable(u32),

    #[error("need {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },

    #[error("singular parameter at index {index}: {reason}")]
    SingularParameter { index: usize, reason: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid problem spec: {0}")]
    InvalidSpec(&'static str),

    #[error("operation requires m = {expected} terms, spec has m = {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: &'static str },
}
