use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("permutation size must be at least 1")]
    EmptyPermutation,

    #[error("exhaustive enumeration is limited to n <= {max}, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("point set is not connected")]
    Disconnected,

    #[error("augmentation needs at least two points, got {0}")]
    TooSmall(usize),

    #[error("vertex {0} has no neighbor on the {1} boundary")]
    MissingBoundaryNeighbor(u32, &'static str),

    #[error("value {value} does not fit in {width} bits")]
    WidthOverflow { value: u64, width: u32 },

    #[error("malformed label: {0}")]
    MalformedLabel(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
