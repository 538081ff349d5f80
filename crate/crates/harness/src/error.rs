use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("{path}: {source}")]
    Dataset { path: PathBuf, source: wjump_core::Error },

    #[error(transparent)]
    Core(#[from] wjump_core::Error),

    #[error("failed to build thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),

    #[error("failed to encode JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn usage(message: impl Into<String>) -> Self {
        HarnessError::Usage(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// 2 for anything the user can fix by changing arguments or files, 1 for
    /// numeric and internal failures.
    pub fn exit_code(&self) -> i32 {
        use wjump_core::Error as E;
        match self {
            HarnessError::Usage(_) | HarnessError::Io { .. } | HarnessError::Parse { .. } => 2,
            HarnessError::Dataset { .. } => 2,
            HarnessError::Core(E::DenseCapExceeded { .. } | E::InvalidParameter(_)) => 2,
            HarnessError::Core(_) | HarnessError::ThreadPool(_) | HarnessError::Json(_) => 1,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
