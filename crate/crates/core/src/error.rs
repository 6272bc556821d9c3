//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by code construction, decoding and the fuzzy schemes.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("alist parse error: {0}")]
    AlistParse(String),

    #[error("infeasible ensemble: rate {rate} with column weight {dv}")]
    InfeasibleEnsemble { rate: f64, dv: usize },

    #[error("code is not in lower-triangular form")]
    NotTriangular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("scheme mismatch: record is {record}, expected {expected}")]
    SchemeMismatch { record: String, expected: String },

    #[error("code mismatch: record references {record}, given code is {given}")]
    CodeMismatch { record: String, given: String },

    #[error("record parse error: {0}")]
    RecordParse(String),

    #[error("template set error: {0}")]
    TemplateSet(String),

    #[error("empty input: {0}")]
    EmptyInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
