use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("capacity exceeded in {stage}: {detail}")]
    Capacity { stage: &'static str, detail: String },
    #[error("internal inconsistency in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capacity(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Capacity { stage, detail: detail.into() }
    }

    pub(crate) fn internal(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal { stage, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
