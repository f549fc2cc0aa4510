use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("pattern set is empty")]
    EmptySet,

    #[error("word lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    /// A configurable search or enumeration budget ran out before an exact answer was reached.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("pattern {0} consists only of zeros; transfer matrices are undefined for such sets")]
    AllZeroPattern(String),

    #[error("window length {m} exceeds the configured cap {cap}")]
    WindowTooLong { m: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
