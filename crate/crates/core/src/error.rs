use thiserror::Error;

/// Errors produced by every operation in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("index {index} out of range (maximum {max})")]
    OutOfRange { index: usize, max: usize },

    #[error("profiles are not comparable: {0}")]
    ProfileMismatch(String),

    #[error("polynomial of degree {degree} needs more than the {known} known power sums")]
    InsufficientInformation { degree: usize, known: usize },

    #[error("iteration cap {cap} exceeded: profile is inconsistent with nonnegative roots")]
    IterationCap { cap: usize },

    #[error("polynomial is not real-rooted: {real} real roots (with multiplicity) for degree {degree}")]
    NotRealRooted { real: usize, degree: usize },

    #[error("signing has {got} signs but the graph has {expected} edges")]
    SigningMismatch { got: usize, expected: usize },

    #[error("{edges} edges exceed the exhaustion cap of {cap}; use sampling mode")]
    ExhaustionCap { edges: usize, cap: usize },

    #[error("unknown catalog graph `{0}`")]
    UnknownGraph(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("oracle inconsistency: {0}")]
    OracleInconsistent(String),

    #[error("certificate check `{check}` failed: {detail}")]
    Certificate {
        check: String,
        detail: String,
        index: Option<usize>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn certificate(check: &str, detail: impl Into<String>, index: Option<usize>) -> Self {
        Error::Certificate {
            check: check.to_string(),
            detail: detail.into(),
            index,
        }
    }
}
