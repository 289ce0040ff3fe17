use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point {index} out of range for a structure with {n} points")]
    Index { index: usize, n: usize },
    #[error("relation contains a cycle through point {0}")]
    Cycle(usize),
    #[error("structures must have at least one point")]
    Empty,
    #[error("size {size} exceeds the cap of {cap}")]
    Size { size: usize, cap: usize },
    #[error("expected {expected} blocks, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("point set is not a strong module")]
    NotStrong,
    #[error("poset embeds N")]
    NotNFree,
    #[error("graph contains an induced P4")]
    NotCograph,
    #[error("summand {0} does not have a connected incomparability graph")]
    NotCcgc(usize),
    #[error("window carries {available} anchors, {needed} needed")]
    Anchor { needed: usize, available: usize },
    #[error("linear-regime window has r = {value} at position {position}")]
    Regime { position: usize, value: i8 },
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
