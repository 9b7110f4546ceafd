use thiserror::Error;

/// Errors surfaced by group construction, sequence operations and searches.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("cap exceeded: construction needs {required} elements, cap is {cap}")]
    CapExceeded { required: u64, cap: u64 },

    #[error("not a p-group: order {order} is not a power of {p}")]
    NotPGroup { order: u64, p: u64 },

    #[error("empty sequence")]
    EmptySequence,

    #[error("length out of range: {0}")]
    BadLength(String),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("search exhausted without a solution: {0}")]
    SearchExhausted(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("wrong family: {0}")]
    WrongFamily(String),

    #[error("bad invariant factors: {0}")]
    BadFactors(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("element index {index} out of bounds for group of order {order}")]
    IndexOutOfBounds { index: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
