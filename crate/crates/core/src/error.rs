use std::io;

use thiserror::Error;

use crate::partition::{Partition, Rectangle};
use crate::symfunc::BasisTag;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a usable prime")]
    InvalidPrime(u64),

    #[error("parts sum to {actual}, expected {expected}")]
    PartsSumMismatch { expected: u64, actual: u64 },

    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),

    #[error("partition {partition} does not fit in a {rect} rectangle")]
    NotContained {
        partition: Partition,
        rect: Rectangle,
    },

    #[error("rectangle dimensions must be positive, got {rows}x{cols}")]
    EmptyRectangle { rows: u32, cols: u32 },

    #[error("weights differ: |{left}| != |{right}|")]
    WeightMismatch { left: Partition, right: Partition },

    #[error("expected {expected} basis, found {found}")]
    BasisMismatch { expected: BasisTag, found: BasisTag },

    #[error("Chow ring mismatch: G({0}, {1}) vs G({2}, {3})")]
    SpecMismatch(u32, u32, u32, u32),

    #[error("invalid Grassmannian G({m}, {ambient}): need 1 <= m < N")]
    InvalidSpec { m: u32, ambient: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("term budget exhausted during {stage}: {reached} terms exceeds limit {limit}")]
    BudgetExhausted {
        stage: &'static str,
        reached: u128,
        limit: u64,
    },

    #[error("cannot parse partition {0:?}")]
    ParsePartition(String),

    #[error("cache file {path}: {reason}")]
    CacheFormat { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
