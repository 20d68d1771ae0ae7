//! Harness error type. Usage errors exit with code 1, everything else
//! with code 2.

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {detail}")]
    Parse {
        path: String,
        line: usize,
        detail: String,
    },

    #[error(transparent)]
    Core(#[from] diam_core::Error),
}

impl HarnessError {
    pub fn is_usage(&self) -> bool {
        matches!(self, HarnessError::Usage(_))
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
