use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {q} exceeds the configured limit {limit}")]
    TooLarge { q: u32, limit: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is not in the field of order {q}")]
    InvalidElement { value: u32, q: u32 },
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("generator matrix is empty")]
    EmptyMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what} needs {needed} steps, budget is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("codes have different parameters: {0}")]
    MismatchedParameters(String),
    #[error("no code found for {0}")]
    SearchFailed(String),
    #[error("received word matches no codeword")]
    Inadmissible,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
