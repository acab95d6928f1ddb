use crate::root_system::{AlgebraId, Weight};

/// Errors produced by the library.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown algebra {0:?} (expected A1..A9, C2 or G2)")]
    UnknownAlgebra(String),
    #[error("weight {weight} has {found} labels but {algebra} has rank {expected}")]
    WeightLength {
        algebra: AlgebraId,
        weight: Weight,
        expected: usize,
        found: usize,
    },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("simple-root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid index pair ({i}, {j}): need 1 <= i <= j <= {rank}")]
    InvalidIndexPair { i: usize, j: usize, rank: usize },
    #[error("weight must be dominant, got {0}")]
    NotDominant(Weight),
    #[error("{operation} is not defined for {algebra}")]
    UnsupportedAlgebra {
        operation: &'static str,
        algebra: AlgebraId,
    },
    #[error(
        "rank {rank} exceeds the group-enumeration cap {cap} (set WEYLPOLY_MAX_RANK to override)"
    )]
    RankLimitExceeded { rank: usize, cap: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exact division left a nonzero remainder")]
    DivisionRemainder,
    #[error("polytope expansion did not terminate")]
    ExpansionDiverged,
    #[error("malformed formal sum: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
