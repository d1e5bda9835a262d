use thiserror::Error;

/// Errors raised by the numerical routines and the command-line driver.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain where a quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or inconsistent arguments.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The boundary failed its hypotheses.
    #[error("boundary validation failed: {0}")]
    Validation(String),
    /// A solver or experiment was configured in a way it cannot handle.
    #[error("configuration error: {0}")]
    Config(String),
    /// A numerical procedure failed to converge or produced non-finite output.
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
