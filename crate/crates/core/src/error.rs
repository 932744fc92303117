use thiserror::Error;

use crate::grading::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown algebra family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different algebras (`{0}` vs `{1}`)")]
    AlgebraMismatch(String, String),

    #[error("bilinear form of `{0}` is degenerate")]
    DegenerateForm(String),

    #[error("free-field contexts differ: {0} vs {1}")]
    ContextMismatch(String, String),

    #[error("generator index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("field is not Virasoro-shaped: pole {pole} {reason}")]
    NotVirasoro { pole: u32, reason: String },

    #[error("critical level: k + h_dual = 0")]
    CriticalLevel,

    #[error("normalization solve failed for `{0}`: {1}")]
    SolveFailure(String, String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("weight {got} exceeds truncation {max}")]
    Truncation { got: Weight, max: Weight },

    #[error("presentation cannot be certified: {0}")]
    Uncertifiable(String),

    #[error("pipeline inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}
