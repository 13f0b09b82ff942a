use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulator and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty network")]
    EmptyNetwork,

    #[error("degenerate network: need at least 2 nodes, got {0}")]
    DegenerateNetwork(usize),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("point set of {got} exceeds the EMST cap of {cap} points")]
    EmstCapExceeded { got: usize, cap: usize },

    #[error("{k} is outside Zipf support [1, {max}]")]
    OutsideZipfSupport { k: usize, max: usize },

    #[error("no sessions")]
    NoSessions,

    #[error("log regime undefined for n = {0} (need n >= 3)")]
    LogRegimeUndefined(u64),

    #[error("theory valid only for uniform geography (g = {0})")]
    NonUniformGeography(f64),

    #[error("underdetermined fit: {distinct} distinct n values for a basis of {basis}")]
    UnderdeterminedFit { distinct: usize, basis: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
