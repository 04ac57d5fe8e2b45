//! Pairwise similarity and association measures between entity vectors.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{usable_entities, DataMatrix, Dropped, Format, Orientation};
use crate::vectors::{is_constant, EntityVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SimilarityKind {
    #[default]
    Cosine,
    Pearson,
    Jaccard,
    Dice,
    PseudoCosine,
}

impl SimilarityKind {
    pub const ALL: [SimilarityKind; 5] = [
        SimilarityKind::Cosine,
        SimilarityKind::Pearson,
        SimilarityKind::Jaccard,
        SimilarityKind::Dice,
        SimilarityKind::PseudoCosine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimilarityKind::Cosine => "cosine",
            SimilarityKind::Pearson => "pearson",
            SimilarityKind::Jaccard => "jaccard",
            SimilarityKind::Dice => "dice",
            SimilarityKind::PseudoCosine => "pseudo-cosine",
        }
    }

    pub fn compute(self, x: &EntityVector, y: &EntityVector) -> Result<f64> {
        match self {
            SimilarityKind::Cosine => cosine(x, y),
            SimilarityKind::Pearson => pearson(x, y),
            SimilarityKind::Jaccard => jaccard(x, y),
            SimilarityKind::Dice => dice(x, y),
            SimilarityKind::PseudoCosine => pseudo_cosine(x, y),
        }
    }
}

impl fmt::Display for SimilarityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SimilarityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

fn same_length(x: &EntityVector, y: &EntityVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.label().to_owned(),
            left_len: x.len(),
            right: y.label().to_owned(),
            right_len: y.len(),
        });
    }
    Ok(())
}

fn nonzero(measure: &'static str, v: &EntityVector) -> Result<()> {
    if v.is_zero() {
        return Err(Error::ZeroVector {
            measure,
            label: v.label().to_owned(),
        });
    }
    Ok(())
}

/// Σxᵢyᵢ, Σxᵢ², Σyᵢ².
fn moments(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    (dot(x, y), dot(x, x), dot(y, y))
}

/// Dot product accumulated in twice the working precision (Ogita, Rump &
/// Oishi's Dot2): each product and sum keeps its rounding error, which is
/// added back at the end.
fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut err = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let p = a * b;
        let p_err = a.mul_add(b, -p);
        let t = sum + p;
        let z = t - sum;
        err += (sum - (t - z)) + (p - z) + p_err;
        sum = t;
    }
    sum + err
}

/// Salton's cosine `Σxy / (‖x‖₂‖y‖₂)`.
pub fn cosine(x: &EntityVector, y: &EntityVector) -> Result<f64> {
    same_length(x, y)?;
    nonzero("cosine", x)?;
    nonzero("cosine", y)?;
    let (xy, xx, yy) = moments(x.coords(), y.coords());
    Ok(xy / (xx * yy).sqrt())
}

/// Pearson's product-moment correlation.
///
/// Integer-valued (count) data is evaluated with the raw-sum formula, which
/// is exact in `f64` up to 2⁵³, so r = 0 comes out as exactly zero. Other
/// data is mean-centred first.
pub fn pearson(x: &EntityVector, y: &EntityVector) -> Result<f64> {
    same_length(x, y)?;
    for v in [x, y] {
        if is_constant(v) {
            return Err(Error::ConstantVector {
                label: v.label().to_owned(),
            });
        }
    }
    let r = exact_count_pearson(x.coords(), y.coords())
        .unwrap_or_else(|| centred_pearson(x.coords(), y.coords()));
    Ok(r.clamp(-1.0, 1.0))
}

const EXACT_INTEGER_LIMIT: f64 = 9_007_199_254_740_992.0;

fn exact_count_pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if !x.iter().chain(y).all(|c| c.fract() == 0.0) {
        return None;
    }
    let n = x.len() as f64;
    let (sx, sy): (f64, f64) = (x.iter().sum(), y.iter().sum());
    let (xy, xx, yy) = moments(x, y);
    if n * xx.max(yy) >= EXACT_INTEGER_LIMIT || sx.max(sy).powi(2) >= EXACT_INTEGER_LIMIT {
        return None;
    }
    let num = n * xy - sx * sy;
    let vx = n * xx - sx * sx;
    let vy = n * yy - sy * sy;
    Some(num / (vx.sqrt() * vy.sqrt()))
}

fn centred_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (cov, vx, vy) = x
        .iter()
        .zip(y)
        .fold((0.0, 0.0, 0.0), |(cov, vx, vy), (&a, &b)| {
            let (da, db) = (a - mx, b - my);
            (cov + da * db, vx + da * da, vy + db * db)
        });
    cov / (vx.sqrt() * vy.sqrt())
}

/// Jaccard (Tanimoto) index `Σxy / (Σx² + Σy² − Σxy)`.
pub fn jaccard(x: &EntityVector, y: &EntityVector) -> Result<f64> {
    same_length(x, y)?;
    nonzero("jaccard", x)?;
    nonzero("jaccard", y)?;
    let (xy, xx, yy) = moments(x.coords(), y.coords());
    Ok(xy / (xx + yy - xy))
}

/// Dice's measure `2Σxy / (Σx² + Σy²)`.
pub fn dice(x: &EntityVector, y: &EntityVector) -> Result<f64> {
    same_length(x, y)?;
    nonzero("dice", x)?;
    nonzero("dice", y)?;
    let (xy, xx, yy) = moments(x.coords(), y.coords());
    Ok(2.0 * xy / (xx + yy))
}

/// Cosine with L¹ norms in the denominator: `Σxy / (Σx · Σy)`.
pub fn pseudo_cosine(x: &EntityVector, y: &EntityVector) -> Result<f64> {
    same_length(x, y)?;
    nonzero("pseudo-cosine", x)?;
    nonzero("pseudo-cosine", y)?;
    let sx: f64 = x.coords().iter().sum();
    let sy: f64 = y.coords().iter().sum();
    Ok(dot(x.coords(), y.coords()) / (sx * sy))
}

/// Square, symmetric table of one measure over the usable entities of a
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub kind: SimilarityKind,
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    pub dropped: Vec<Dropped>,
}

impl SimilarityMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    /// Same dialect as [`crate::matrix::write_matrix`]: header row plus a
    /// row-label column.
    pub fn write<W: Write>(&self, sink: W, format: Format) -> Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .delimiter(format.delimiter())
            .from_writer(sink);
        writer.write_record(std::iter::once("").chain(self.labels.iter().map(String::as_str)))?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let mut record = Vec::with_capacity(row.len() + 1);
            record.push(label.clone());
            record.extend(row.iter().map(f64::to_string));
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Computes `kind` between every pair of usable entities along `orientation`.
///
/// Zero vectors (and constant vectors, for Pearson) are excluded and listed
/// in [`SimilarityMatrix::dropped`].
pub fn pairwise_matrix(
    m: &DataMatrix,
    kind: SimilarityKind,
    orientation: Orientation,
) -> Result<SimilarityMatrix> {
    let usable = usable_entities(m, orientation, kind == SimilarityKind::Pearson)?;
    let kept = &usable.kept;
    if kept.len() < 2 {
        return Err(Error::TooFewEntities { usable: kept.len() });
    }
    let k = kept.len();
    let mut values = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let s = kind.compute(&kept[i], &kept[j])?;
            values[i][j] = s;
            values[j][i] = s;
        }
    }
    Ok(SimilarityMatrix {
        kind,
        labels: kept.iter().map(|v| v.label().to_owned()).collect(),
        values,
        dropped: usable.dropped,
    })
}
