use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid ordered set partition: {0}")]
    InvalidPartition(String),

    #[error("invalid cuts: {0}")]
    InvalidCuts(String),

    #[error("parse error at token {token} (chars {start}..{end}): {message}")]
    Parse {
        token: usize,
        start: usize,
        end: usize,
        message: String,
    },

    #[error("relation side condition violated: {0}")]
    SideCondition(String),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("matrix data invalid: {0}")]
    InvalidMatrix(String),

    #[error("input is not a matrix tuple: {0}")]
    NotATuple(String),

    #[error("polynomial family is singular: {0}")]
    SingularFamily(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn parse(token: usize, span: (usize, usize), message: impl Into<String>) -> Self {
        Error::Parse {
            token,
            start: span.0,
            end: span.1,
            message: message.into(),
        }
    }
}
