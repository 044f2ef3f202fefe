use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("sample index {index} out of range for dataset of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("vector has no nonzero entry")]
    AllZero,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("model kind mismatch: {0}")]
    ModelMismatch(String),

    #[error("covariance matrix is not positive semidefinite")]
    NotPsd,

    #[error("objective became non-finite at iteration {iteration}")]
    Divergence { iteration: usize },

    #[error("restricted Newton did not converge within {iters} iterations (gradient norm {grad_norm:.3e})")]
    NewtonNoConvergence { iters: usize, grad_norm: f64 },

    #[error("combinatorial cap exceeded: {0}")]
    CapExceeded(String),

    #[error("solver failed in trial {trial}: {source}")]
    TrialFailed {
        trial: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep aborted at grid point {grid_point}: {source}")]
    SweepFailed {
        grid_point: String,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
