use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("warp factor must be at least 4, got {0}")]
    WarpFactor(usize),

    #[error("hybrid insertion threshold must be at least 2, got {0}")]
    HybridThreshold(usize),

    #[error("k-nearly parameter out of range: need 1 <= k < n, got n={n}, k={k}")]
    KOutOfRange { n: usize, k: usize },

    #[error("invalid timsort config: {0}")]
    TimsortConfig(String),

    #[error("invalid generator spec: {0}")]
    Generator(String),

    #[error("malformed dataset: {0}")]
    Dataset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
