use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("load error at line {line}: {msg}")]
    Load { line: usize, msg: String },

    #[error("per-query work exceeded safety cap ({0} units)")]
    Budget(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub fn load(line: usize, msg: impl Into<String>) -> Self {
        Error::Load { line, msg: msg.into() }
    }
}
