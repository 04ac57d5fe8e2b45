//! Data-driven cosine thresholds.
//!
//! A pair with norm ratios `aᵢ`, `aⱼ` has Pearson r > 0 exactly when its
//! cosine exceeds `aᵢaⱼ/n`. Taking the largest product over the dataset
//! gives a single cosine above which no pair correlates negatively.

use crate::error::Result;
use crate::matrix::{DataMatrix, Orientation};
use crate::sheaf::{cloud, envelope, line_params};
use crate::vectors::NormProfile;

/// |r| at or below this is treated as zero when looking for violations.
pub const R_ZERO_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub n: usize,
    /// `ab_min / n`: below this no pair can have r ≥ 0 at the envelope's low end.
    pub lower: f64,
    /// `ab_max / n`: above this no pair has a negative Pearson r.
    pub upper: f64,
    pub min_pair: (String, String),
    pub max_pair: (String, String),
    /// Set when edges are pruned pair by pair instead of by one global cut.
    pub per_pair_mode: bool,
}

pub fn compute_thresholds(profiles: &[NormProfile], n: usize) -> Result<ThresholdReport> {
    let env = envelope(profiles, n)?;
    Ok(ThresholdReport {
        n,
        lower: env.min_line.cos_at_r0,
        upper: env.max_line.cos_at_r0,
        min_pair: env.min_pair,
        max_pair: env.max_pair,
        per_pair_mode: false,
    })
}

/// The cosine at which a pair with ratios `a`, `b` has r = 0.
pub fn pair_threshold(a: f64, b: f64, n: usize) -> Result<f64> {
    Ok(line_params(a, b, n)?.cos_at_r0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub pair: (String, String),
    pub cos: f64,
    pub r: f64,
}

/// Pairs whose cosine is above `threshold` while Pearson's r is negative.
pub fn verify_guarantee(
    m: &DataMatrix,
    orientation: Orientation,
    threshold: f64,
) -> Result<Vec<Violation>> {
    Ok(cloud(m, orientation)?
        .into_iter()
        .filter(|p| p.cos > threshold && p.r < -R_ZERO_TOLERANCE)
        .map(|p| Violation {
            pair: p.pair,
            cos: p.cos,
            r: p.r,
        })
        .collect())
}
