use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: file contains no data rows")]
    EmptyFile { path: PathBuf },

    #[error("{path}: row {row} has {found} columns, expected {expected}")]
    RaggedRow {
        path: PathBuf,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{path}: row {row}, column {column}: cannot parse {cell:?} as a number")]
    NonNumericCell {
        path: PathBuf,
        row: usize,
        column: usize,
        cell: String,
    },

    #[error("{path}: row {row}, column {column}: value {cell:?} is not finite")]
    NonFiniteCell {
        path: PathBuf,
        row: usize,
        column: usize,
        cell: String,
    },

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot form {k} clusters from {n} objects")]
    TooManyClusters { k: usize, n: usize },

    #[error("label count {labels} does not match assignment length {memberships}")]
    LengthMismatch { labels: usize, memberships: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("dataset {name:?} failed validation: {reason}")]
    Validation { name: String, reason: String },

    #[error("cannot write report: {0}")]
    Report(String),
}
