use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero entries unsupported")]
    ZeroEntry,

    #[error("a pretzel needs at least one entry")]
    EmptyPretzel,

    #[error("letter {letter} needs at least {} strands, word has {strands}", letter.unsigned_abs() + 1)]
    LetterOutOfRange { letter: i64, strands: usize },

    #[error("a braid word needs at least one strand")]
    NoStrands,

    #[error("sign scale factor must be nonzero")]
    ZeroScale,

    #[error("no even entry to rotate into place")]
    NoEvenEntry,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("crossing count {actual} exceeds the state-sum cap of {cap} crossings")]
    CrossingCapExceeded { actual: usize, cap: usize },

    #[error("strand count {actual} exceeds the transfer cap of {cap} strands")]
    StrandCapExceeded { actual: usize, cap: usize },

    #[error("zero polynomial has no framing ratio")]
    ZeroPolynomial,

    #[error("diagram carries no orientation")]
    MissingOrientation,

    #[error("orientation is inconsistent at edge ({0}, {1})")]
    InconsistentOrientation(u32, u32),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
