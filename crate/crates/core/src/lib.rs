//! Relation between Pearson's r and Salton's cosine through L¹/L² norm
//! ratios, with cosine thresholds that rule out negative correlations and
//! exporters for the resulting similarity networks.

// `!(x >= lo)` comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod export;
pub mod matrix;
pub mod measures;
pub mod sheaf;
pub mod threshold;
pub mod vectors;

pub use error::{Error, Result};
pub use matrix::{DataMatrix, Format, Orientation};
pub use measures::SimilarityKind;
