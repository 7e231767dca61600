use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("component {component} has zero mass; multiplier is undefined")]
    UndefinedMultiplier { component: usize },

    #[error("Gagliardo-Nirenberg quotient undefined: {0}")]
    UndefinedQuotient(String),

    #[error("operation requires {required} discretization")]
    UnsupportedDiscretization { required: &'static str },

    #[error("component {component} has zero L2 norm; cannot renormalize")]
    DegenerateInit { component: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("comparison error: {0}")]
    Comparison(String),

    #[error("misuse: {0}")]
    Misuse(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
