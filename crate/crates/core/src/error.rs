use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin type {label}{rank}")]
    InvalidType { label: char, rank: usize },

    #[error("node {node} out of range for rank {rank}")]
    InvalidNode { node: i64, rank: usize },

    #[error("vector has length {got}, expected rank {rank}")]
    RankMismatch { got: usize, rank: usize },

    #[error("not a root: coefficients {0:?} have mixed signs")]
    MixedSignRoot(Vec<i64>),

    #[error("word {word:?} is not reduced: root at step {step} is {root:?}")]
    NotReduced {
        word: Vec<i64>,
        step: usize,
        root: Vec<i64>,
    },

    #[error("word has length {got}, the longest element has length {expected}")]
    WrongLength { got: usize, expected: usize },

    #[error("invalid double word: {0}")]
    InvalidDoubleWord(String),

    #[error("prefix length {len} exceeds word length {max}")]
    PrefixOutOfRange { len: usize, max: usize },

    #[error("enumeration refused for rank {rank} (limit {limit})")]
    EnumerationTooLarge { rank: usize, limit: usize },

    #[error("cannot parse word {0:?}")]
    Parse(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("cannot mutate at frozen vertex {0}")]
    FrozenMutation(String),

    #[error("incompatible seeds: {0}")]
    Incompatible(String),

    #[error("exchange monomials at {vertex} have different weights: {plus:?} vs {minus:?}")]
    MonomialWeightMismatch {
        vertex: String,
        plus: Vec<i64>,
        minus: Vec<i64>,
    },

    #[error("matrix outside the big cell: leading principal minor {0} vanishes")]
    OutsideBigCell(usize),

    #[error("function undefined at this point: {0}")]
    Pole(String),

    #[error("matrix realization only exists for type A, got {0}")]
    UnsupportedType(String),

    #[error("sampler gave up after {0} attempts")]
    SamplingFailed(usize),

    #[error("exchange matrix entry exceeds the 64-bit range")]
    Overflow,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
