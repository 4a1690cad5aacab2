use lch_core::LchError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A file that does not follow its grammar.
    #[error("{source_name}:{line}:{col}: {msg}")]
    Parse { source_name: String, line: usize, col: usize, msg: String },
    #[error(transparent)]
    Core(#[from] LchError),
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// `2` for unusable input, `3` for exhausted budgets. Check failures are
    /// reported, not raised, and map to `1` in the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(LchError::Budget(_)) => 3,
            Error::Core(LchError::Validation(_) | LchError::Conflict { .. }) => 1,
            _ => 2,
        }
    }
}
