use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector `{label}` has a negative coordinate {value} at position {index}")]
    NegativeCoordinate {
        label: String,
        index: usize,
        value: f64,
    },

    #[error("vector `{label}` has a non-finite coordinate at position {index}")]
    NonFiniteCoordinate { label: String, index: usize },

    #[error("vector `{label}` has length {len}; at least 2 coordinates are required")]
    VectorTooShort { label: String, len: usize },

    #[error("undefined norm ratio: `{label}` is the zero vector")]
    UndefinedNormRatio { label: String },

    #[error("{measure} undefined for zero vector `{label}`")]
    ZeroVector { measure: &'static str, label: String },

    #[error("Pearson undefined for constant vector `{label}`")]
    ConstantVector { label: String },

    #[error("length mismatch: `{left}` has {left_len} coordinates, `{right}` has {right_len}")]
    LengthMismatch {
        left: String,
        left_len: usize,
        right: String,
        right_len: usize,
    },

    #[error("constant-vector ratio: line undefined (a = {a}, b = {b}, n = {n})")]
    LineUndefined { a: f64, b: f64, n: usize },

    #[error("norm ratio {ratio} is below 1")]
    RatioBelowOne { ratio: f64 },

    #[error("profile `{label}` was computed for n = {found}, expected n = {expected}")]
    ProfileLengthMismatch {
        label: String,
        expected: usize,
        found: usize,
    },

    #[error("need at least 2 usable entities, found {usable}")]
    TooFewEntities { usable: usize },

    #[error("threshold {0} is outside [0, 1)")]
    InvalidThreshold(f64),

    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("line {line}, column `{column}`: cannot parse `{cell}` as a number")]
    BadNumber {
        line: u64,
        column: String,
        cell: String,
    },

    #[error("negative value {value} at row `{row}`, column `{column}`")]
    NegativeCell {
        row: String,
        column: String,
        value: f64,
    },

    #[error("duplicate {axis} label `{label}`")]
    DuplicateLabel { axis: &'static str, label: String },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("occurrence matrix must be binary: value {value} at row `{row}`, column `{column}`")]
    NonBinary {
        row: String,
        column: String,
        value: f64,
    },

    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: u64, reason: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}
