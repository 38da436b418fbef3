use thiserror::Error;

/// Errors raised by constructors, parsers and partial operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty window")]
    EmptyWindow,
    #[error("position {position}: cannot parse {token:?} as an integer")]
    BadToken { position: usize, token: String },
    #[error("position {position}: entry {value} is outside 1..={n}")]
    EntryOutOfRange { position: usize, value: i64, n: usize },
    #[error("position {position}: entry {value} repeats an earlier absolute value")]
    RepeatedEntry { position: usize, value: i64 },
    #[error("position {position}: entry {value} is negative but a permutation was expected")]
    UnexpectedSign { position: usize, value: i64 },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("generator s{index} does not exist in type {kind} with n = {n}")]
    GeneratorOutOfRange { index: u32, kind: char, n: usize },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("factor {factor:?} is not a member of the parabolic quotient W<{index}>")]
    NotInQuotient { factor: Vec<u32>, index: usize },
    #[error("malformed word text: {0}")]
    BadWord(String),
    #[error("malformed path text: {0}")]
    BadPath(String),
    #[error("{0} is a fixed point of the involution")]
    FixedPoint(String),
    #[error("subset has odd cardinality {0}")]
    OddSubset(usize),
    #[error("subset element {element} is outside 1..={n} or repeated")]
    BadSubset { element: usize, n: usize },
    #[error("order of {group}_{n} does not fit in 64 bits")]
    GroupTooLarge { group: char, n: usize },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
