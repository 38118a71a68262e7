use thiserror::Error;

use crate::fusion::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u32, to: u32 },

    #[error("value is not fixed by complex conjugation")]
    NotSelfConjugate,

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid category data:\n{0}")]
    InvalidData(ValidationReport),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("label index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("invalid subcategory: {0}")]
    InvalidSubcat(String),

    #[error("subcategories belong to different categories")]
    ParentMismatch,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("category has zero dimension")]
    ZeroDimension,

    #[error("category is not modular")]
    NotModular,

    #[error("category is not unitary (some dimension is not positive)")]
    NotUnitary,

    #[error("split failed: {0}")]
    SplitFailure(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("rank {rank} exceeds budget {budget}")]
    BudgetExceeded { rank: usize, budget: usize },

    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
