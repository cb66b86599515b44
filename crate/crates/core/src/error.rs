use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different coefficient fields")]
    MixedFields,

    #[error("chirality mismatch: {0}")]
    ChiralityMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("budget exceeded for class {class}: {size} spanning words > budget {budget}")]
    BudgetExceeded {
        class: String,
        size: usize,
        budget: usize,
    },

    #[error("relation-set inconsistency: {0}")]
    Inconsistent(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
