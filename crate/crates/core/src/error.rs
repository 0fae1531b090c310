use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the operation's domain (bad vertex id, depth too small, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A structure violates its own invariants.
    #[error("validation error: {0}")]
    Validation(String),
    /// A configured resource cap would be exceeded.
    #[error("resource error: {0}")]
    Resource(String),
    /// Malformed textual input.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Malformed file contents outside the formula grammar.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
