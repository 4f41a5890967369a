use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = GaError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GaError {
    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),

    #[error("invalid bounds: lo ({lo}) must be strictly below hi ({hi})")]
    InvalidBounds { lo: f64, hi: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid ranking: second best fitness {second} exceeds best fitness {best}")]
    InvalidRanking { best: f64, second: f64 },

    #[error("non-finite objective {objective} at variables {variables:?}")]
    Evaluation { objective: f64, variables: Vec<f64> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("trial {index} failed: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<GaError>,
    },

    #[error("failed to write {path}: {source}")]
    Export {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
