use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{what}: {requested} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// A character whose expansion in irreducible Jack characters has a
    /// negative coefficient.
    #[error("character is not reducible: weight of {partition} is {weight} < 0")]
    NonReducible { partition: Partition, weight: String },

    #[error("singular linear system ({0})")]
    SingularSystem(String),

    #[error("rank deficient system: rank {rank} < {unknowns} unknowns ({context})")]
    RankDeficient {
        rank: usize,
        unknowns: usize,
        context: String,
    },

    #[error("inconsistent linear system ({0})")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
