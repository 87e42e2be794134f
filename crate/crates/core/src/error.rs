use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text (bad grid, ragged rows, unparsable cell).
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input outside the nonnegative rationals.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A configured size or search budget was exhausted.
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("witness verification failed: {0}")]
    Witness(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Domain(_))
    }
}
