use thiserror::Error;

use crate::majorize::ComparisonTag;

/// Errors raised by the deciders and constructors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty weight list")]
    Empty,

    #[error("all weights are zero")]
    AllZero,

    #[error("invalid weight at index {idx}: {value}")]
    InvalidWeight { idx: usize, value: f64 },

    #[error("not a canonical probability vector: {0}")]
    NotCanonical(String),

    #[error("eps must lie in (0, 1), got {0}")]
    EpsOutOfRange(f64),

    #[error("cannot pad a vector of dimension {dim} to {requested}")]
    DimTooSmall { dim: usize, requested: usize },

    #[error("source state has a zero entry; perturb it first")]
    ZeroEntryInSource,

    #[error("source and target are the same state up to permutation")]
    IdenticalStates,

    #[error("invalid alpha grid: {0}")]
    InvalidGrid(String),

    #[error("dimension {entries} exceeds the cap of {cap} tensor entries")]
    DimensionBlowup { entries: u128, cap: usize },

    #[error("pair is not incomparable (got {0:?})")]
    NotIncomparable(ComparisonTag),

    #[error("split eps {eps} must be below the last entry {last}")]
    EpsTooLarge { eps: f64, last: f64 },

    #[error("supplied vector does not catalyze the transformation")]
    NotACatalyst,

    #[error("marginal mismatch: max deviation {0}")]
    MarginalMismatch(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("channel is not a valid incoherent operation")]
    InvalidChannel,

    #[error("source is not majorized by target")]
    NotMajorized,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = core::result::Result<T, Error>;
