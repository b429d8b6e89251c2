use std::path::PathBuf;

/// Errors surfaced by the simulation and the experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Statevector simulation is bounded so cross-validation stays cheap.
    #[error("statevector capacity exceeded: N={n} > {max}")]
    Capacity { n: usize, max: usize },

    /// A deterministic sample that cannot be interpreted against the pattern.
    #[error("malformed sample: {0}")]
    MalformedSample(String),

    /// Sample construction ran for far more stages than the schedule allows.
    #[error("sample construction exceeded {limit} stages for pattern length {m}")]
    StageOverflow { m: usize, limit: u64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
