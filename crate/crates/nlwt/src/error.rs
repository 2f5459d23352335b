use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: u64, column: usize, message: String },
    #[error("{path}: no sample rate (add a `# fs=<hz>` line or pass --fs)")]
    MissingSampleRate { path: PathBuf },
    #[error("{path}:{line}: expected {expected} fields, found {found}")]
    RaggedRows { path: PathBuf, line: u64, expected: usize, found: usize },
    #[error("{0}")]
    Core(#[from] nlwt_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
