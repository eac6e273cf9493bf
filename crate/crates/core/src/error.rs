use std::time::Duration;

use thiserror::Error;

use crate::graph::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex label {label} out of range for a graph of order {order}")]
    LabelOutOfRange { label: Label, order: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Label),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(Label),
    #[error("unknown vertex label {0}")]
    UnknownLabel(Label),

    #[error("matrix is not square: row {row} has {len} entries, expected {order}")]
    NonSquare { row: usize, len: usize, order: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("nonzero diagonal entry at row {0}")]
    NonzeroDiagonal(usize),
    #[error("negative distance entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {from} lists {to} as a neighbor but {to} does not list {from}")]
    AsymmetricListing { from: Label, to: Label },

    #[error("not a partition of the vertex set: {0}")]
    InvalidPartition(String),
    #[error("partitions are over different vertex sets")]
    MismatchedVertexSets,
    #[error("aligned blocks have unequal sizes ({left} vs {right})")]
    UnequalPairSizes { left: usize, right: usize },
    #[error("invalid partial mapping: {0}")]
    InvalidMapping(String),

    #[error("graph of order {order} exceeds the brute-force cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("anchor label {0} is not a vertex of the graph")]
    AnchorAbsent(Label),
    #[error("anchors are not injective at label {0}")]
    AnchorNotInjective(Label),
    #[error("time budget of {0:?} exceeded")]
    TimeBudgetExceeded(Duration),

    #[error("unknown criterion '{0}'")]
    UnknownCriterion(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("cannot read '{path}': {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for failures caused by a configured resource limit rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::TimeBudgetExceeded(_))
    }
}
