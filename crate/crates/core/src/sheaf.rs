//! The linear law between Pearson's r and the cosine for a fixed pair of
//! norm ratios.
//!
//! For non-constant, non-negative vectors of length `n` with norm ratios `a`
//! and `b`,
//!
//! ```text
//! r = n / (√(n−a²)·√(n−b²)) · (cos − ab/n)
//! ```
//!
//! holds exactly. Varying `(a, b)` over a dataset gives a sheaf of lines; the
//! (cos, r) points of the dataset each lie on their own line.

use crate::error::{Error, Result};
use crate::matrix::{usable_entities, DataMatrix, Orientation};
use crate::measures::{cosine, pearson};
use crate::vectors::{norm_ratio, NormProfile};

/// Ratios this far below 1 are treated as rounding noise on a one-hot vector.
const RATIO_FLOOR_SLACK: f64 = 1e-12;

/// Relative gap under which two norm ratios count as the same value.
const RATIO_TIE_TOLERANCE: f64 = 1e-12;

/// The line `r = slope · (cos − cos_at_r0)` for one `(a, b, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheafLine {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub slope: f64,
    /// Value of r where the line meets cos = 0; always negative.
    pub r_at_cos0: f64,
    /// Cosine at which r crosses zero, `ab/n`; always positive.
    pub cos_at_r0: f64,
}

pub(crate) fn check_ratio(ratio: f64, n: usize) -> Result<()> {
    if !(ratio >= 1.0 - RATIO_FLOOR_SLACK) {
        return Err(Error::RatioBelowOne { ratio });
    }
    if !(n as f64 - ratio * ratio > 0.0) {
        return Err(Error::LineUndefined { a: ratio, b: ratio, n });
    }
    Ok(())
}

/// Builds the line for ratios `a`, `b` at vector length `n`.
///
/// Fails when either ratio reaches `√n`, i.e. belongs to a constant vector.
pub fn line_params(a: f64, b: f64, n: usize) -> Result<SheafLine> {
    for ratio in [a, b] {
        if !(ratio >= 1.0 - RATIO_FLOOR_SLACK) {
            return Err(Error::RatioBelowOne { ratio });
        }
    }
    let nf = n as f64;
    let (da, db) = (nf - a * a, nf - b * b);
    if !(da > 0.0 && db > 0.0) {
        return Err(Error::LineUndefined { a, b, n });
    }
    let roots = da.sqrt() * db.sqrt();
    let ab = a * b;
    Ok(SheafLine {
        n,
        a,
        b,
        slope: nf / roots,
        r_at_cos0: -ab / roots,
        cos_at_r0: ab / nf,
    })
}

impl SheafLine {
    fn roots(&self) -> f64 {
        let nf = self.n as f64;
        (nf - self.a * self.a).sqrt() * (nf - self.b * self.b).sqrt()
    }

    /// r predicted at cosine `cos`. Not clamped to [−1, 1].
    pub fn predict_r(&self, cos: f64) -> f64 {
        self.slope * (cos - self.cos_at_r0)
    }

    /// Cosine at which the line reaches `r`.
    pub fn invert_cos(&self, r: f64) -> f64 {
        (self.roots() * r + self.a * self.b) / self.n as f64
    }

    /// r predicted from a Jaccard index, valid when both vectors have equal
    /// L² norms.
    pub fn predict_r_from_jaccard(&self, j: f64) -> f64 {
        self.predict_r(cos_from_jaccard(j))
    }
}

/// Jaccard index implied by a cosine for vectors of equal L² norm.
pub fn jaccard_from_cos(cos: f64) -> f64 {
    cos / (2.0 - cos)
}

/// Cosine implied by a Jaccard index for vectors of equal L² norm.
pub fn cos_from_jaccard(j: f64) -> f64 {
    2.0 * j / (j + 1.0)
}

/// The two extreme lines of a dataset's sheaf.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub n: usize,
    pub min_line: SheafLine,
    pub max_line: SheafLine,
    pub ab_min: f64,
    pub ab_max: f64,
    pub min_pair: (String, String),
    pub max_pair: (String, String),
}

fn ordered_pair(x: &str, y: &str) -> (String, String) {
    if x <= y {
        (x.to_owned(), y.to_owned())
    } else {
        (y.to_owned(), x.to_owned())
    }
}

/// Selects the extreme lines from a set of norm profiles.
///
/// The upper line pairs the two largest ratios of two different entities
/// (a tie at the top pairs the tied entities). The lower line pairs the
/// smallest ratio with the next strictly larger ratio value (ratios within a
/// relative 1e-12 count as equal); it only pairs equal ratios when every
/// profile has the same ratio. Remaining ties go to
/// the lexicographically smaller label.
pub fn envelope(profiles: &[NormProfile], n: usize) -> Result<Envelope> {
    if profiles.len() < 2 {
        return Err(Error::TooFewEntities {
            usable: profiles.len(),
        });
    }
    for p in profiles {
        if p.n != n {
            return Err(Error::ProfileLengthMismatch {
                label: p.label.clone(),
                expected: n,
                found: p.n,
            });
        }
        check_ratio(p.ratio_a, n)?;
    }

    let mut ascending: Vec<&NormProfile> = profiles.iter().collect();
    ascending.sort_by(|x, y| {
        x.ratio_a
            .total_cmp(&y.ratio_a)
            .then_with(|| x.label.cmp(&y.label))
    });
    let mut descending = ascending.clone();
    descending.sort_by(|x, y| {
        y.ratio_a
            .total_cmp(&x.ratio_a)
            .then_with(|| x.label.cmp(&y.label))
    });

    let (hi1, hi2) = (descending[0], descending[1]);
    let lo1 = ascending[0];
    let lo2 = ascending
        .iter()
        .copied()
        .find(|p| p.ratio_a > lo1.ratio_a * (1.0 + RATIO_TIE_TOLERANCE))
        .unwrap_or(ascending[1]);

    let min_line = line_params(lo1.ratio_a, lo2.ratio_a, n)?;
    let max_line = line_params(hi1.ratio_a, hi2.ratio_a, n)?;
    Ok(Envelope {
        n,
        ab_min: lo1.ratio_a * lo2.ratio_a,
        ab_max: hi1.ratio_a * hi2.ratio_a,
        min_line,
        max_line,
        min_pair: ordered_pair(&lo1.label, &lo2.label),
        max_pair: ordered_pair(&hi1.label, &hi2.label),
    })
}

impl Envelope {
    /// The r interval spanned by the two extreme lines at `cos`.
    pub fn band_at(&self, cos: f64) -> (f64, f64) {
        let (u, v) = (self.min_line.predict_r(cos), self.max_line.predict_r(cos));
        (u.min(v), u.max(v))
    }

    /// Number of points falling outside the band by more than `tol`.
    ///
    /// The envelope is descriptive, so a nonzero count is a diagnostic.
    pub fn count_outside(&self, points: &[CloudPoint], tol: f64) -> usize {
        points
            .iter()
            .filter(|p| {
                let (lo, hi) = self.band_at(p.cos);
                p.r < lo - tol || p.r > hi + tol
            })
            .count()
    }
}

/// One entity pair in (cos, r) space, with the ratios fixing its line.
/// `a` belongs to `pair.0` and `b` to `pair.1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CloudPoint {
    pub pair: (String, String),
    pub cos: f64,
    pub r: f64,
    pub a: f64,
    pub b: f64,
}

/// Every unordered pair of usable entities as a (cos, r) point, sorted by
/// label pair.
pub fn cloud(m: &DataMatrix, orientation: Orientation) -> Result<Vec<CloudPoint>> {
    let usable = usable_entities(m, orientation, true)?;
    let kept = usable.kept;
    if kept.len() < 2 {
        return Err(Error::TooFewEntities { usable: kept.len() });
    }
    let ratios = kept.iter().map(norm_ratio).collect::<Result<Vec<_>>>()?;
    let mut points = Vec::with_capacity(kept.len() * (kept.len() - 1) / 2);
    for i in 0..kept.len() {
        for j in i + 1..kept.len() {
            let (x, y, a, b) = if kept[i].label() <= kept[j].label() {
                (&kept[i], &kept[j], ratios[i], ratios[j])
            } else {
                (&kept[j], &kept[i], ratios[j], ratios[i])
            };
            points.push(CloudPoint {
                pair: (x.label().to_owned(), y.label().to_owned()),
                cos: cosine(x, y)?,
                r: pearson(x, y)?,
                a,
                b,
            });
        }
    }
    points.sort_by(|p, q| p.pair.cmp(&q.pair));
    Ok(points)
}
