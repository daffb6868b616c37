use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("words do not form a free basis: {0}")]
    NotABasis(String),

    #[error("braid is not pure")]
    NotPure,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("{what} {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("({a},{b}) are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("translated subtorus (sign -1) not allowed here")]
    TranslatedSubtorus,

    #[error("subtorus equations are not parametrizable: {0}")]
    NotParametrizable(String),

    #[error("not of depth at most 2 at the permutation level: {0}")]
    NotDepthTwo(String),

    #[error("linking numbers are not determined for {0}")]
    NoLinkingData(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
