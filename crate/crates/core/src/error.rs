//! Error types shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A CSV row failed to parse. `line` is the 1-based line number in the file.
    #[error("ingestion error at line {line}: {msg}")]
    Ingestion { line: u64, msg: String },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Raised when the data cannot support the requested operation
    /// (e.g. every point identical while a positive spread is required).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// A cluster's total compatibility dropped to exactly zero, so its
    /// representative is undefined. The caller should eliminate the cluster.
    #[error("cluster {index} collapsed: zero total compatibility")]
    ClusterCollapse { index: usize },

    #[error("undefined measure: {0}")]
    UndefinedMeasure(String),

    /// The two-cluster compatibility locus is a hyperplane, not a sphere.
    #[error("degenerate locus: {0}")]
    DegenerateLocus(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
