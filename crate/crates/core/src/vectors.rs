//! Entity vectors and their L¹/L² norm profiles.
//!
//! The ratio `a = ‖x‖₁ / ‖x‖₂` of a non-negative, nonzero vector of length
//! `n` always lies in `[1, √n]`, reaching `√n` exactly when the vector is
//! constant. For a binary vector with `k` ones it equals `√k`.

use crate::error::{Error, Result};

/// A labeled, non-negative coordinate vector (one entity of a data matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct EntityVector {
    label: String,
    coords: Vec<f64>,
}

impl EntityVector {
    /// Rejects negative or non-finite coordinates and vectors shorter than 2.
    pub fn new(label: impl Into<String>, coords: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if coords.len() < 2 {
            return Err(Error::VectorTooShort {
                label,
                len: coords.len(),
            });
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteCoordinate { label, index });
            }
            if value < 0.0 {
                return Err(Error::NegativeCoordinate {
                    label,
                    index,
                    value,
                });
            }
        }
        Ok(Self { label, coords })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Vector length `n`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    /// Always false; construction requires at least two coordinates.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0.0)
    }
}

/// Sum of coordinates.
pub fn l1_norm(v: &EntityVector) -> f64 {
    v.coords.iter().sum()
}

/// Euclidean length.
pub fn l2_norm(v: &EntityVector) -> f64 {
    v.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖v‖₁ / ‖v‖₂`, undefined for the zero vector.
pub fn norm_ratio(v: &EntityVector) -> Result<f64> {
    let l2 = l2_norm(v);
    if l2 == 0.0 {
        return Err(Error::UndefinedNormRatio {
            label: v.label.clone(),
        });
    }
    Ok(l1_norm(v) / l2)
}

/// True iff every coordinate is equal (the zero vector included).
pub fn is_constant(v: &EntityVector) -> bool {
    let first = v.coords[0];
    v.coords.iter().all(|&x| x == first)
}

/// Norms of one entity together with the vector length they were taken over.
#[derive(Debug, Clone, PartialEq)]
pub struct NormProfile {
    pub label: String,
    pub l1: f64,
    pub l2: f64,
    pub ratio_a: f64,
    pub n: usize,
}

impl NormProfile {
    pub fn of(v: &EntityVector) -> Result<Self> {
        Ok(Self {
            label: v.label.clone(),
            l1: l1_norm(v),
            l2: l2_norm(v),
            ratio_a: norm_ratio(v)?,
            n: v.len(),
        })
    }

    /// A profile known only through its ratio, with `l2` normalised to 1.
    ///
    /// Norm ratios are scale invariant, so this carries everything the sheaf
    /// model and thresholds need.
    pub fn from_ratio(label: impl Into<String>, ratio_a: f64, n: usize) -> Self {
        Self {
            label: label.into(),
            l1: ratio_a,
            l2: 1.0,
            ratio_a,
            n,
        }
    }
}
