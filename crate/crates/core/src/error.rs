use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid local data: {0}")]
    InvalidLocalData(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("invalid seifert data: {0}")]
    InvalidSeifertData(String),
    #[error("validation required: {0}")]
    ValidationRequired(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("uniqueness not guaranteed: {0}")]
    AmbiguityPossible(String),
    #[error("undecidable from the declared data: {0}")]
    Undecidable(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
