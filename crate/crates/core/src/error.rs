use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A sketch produced an exactly singular triangular factor. Drawing a
    /// fresh test matrix usually fixes it.
    #[error("sketch collapse: {0}")]
    SketchCollapse(&'static str),

    #[error("no convergence: {0}")]
    NoConvergence(&'static str),

    #[error("malformed PGM: {0}")]
    Pgm(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::SketchCollapse(_))
    }
}
