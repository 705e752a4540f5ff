use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation's arguments was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario or run description is internally inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// A linear solve or eigenvalue computation failed.
    #[error("solver error: {0}")]
    Solver(String),

    /// A computed quantity left the range where the run is meaningful
    /// (NaN energy, diverging state).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
