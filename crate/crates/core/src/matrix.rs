//! Labeled data matrices: CSV/TSV loading, validation, and co-citation
//! construction from binary occurrence data.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use log::warn;

use crate::error::{Error, Result};
use crate::vectors::{is_constant, EntityVector, NormProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl Format {
    pub(crate) fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }
}

/// Which axis of a [`DataMatrix`] holds the entities being compared.
///
/// With `Columns`, each column is one entity and the vector length `n` is the
/// number of rows (papers × authors, the usual occurrence layout).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    Rows,
    #[default]
    Columns,
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rows" => Ok(Orientation::Rows),
            "columns" => Ok(Orientation::Columns),
            other => Err(format!("unknown orientation `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KindHint {
    Occurrence,
    Cooccurrence,
    #[default]
    Unknown,
}

/// Dense, labeled, non-negative matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    row_labels: Option<Vec<String>>,
    col_labels: Vec<String>,
    values: Vec<f64>,
    nrows: usize,
    kind_hint: KindHint,
}

impl DataMatrix {
    pub fn new(
        row_labels: Option<Vec<String>>,
        col_labels: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let ncols = col_labels.len();
        if rows.is_empty() || ncols == 0 {
            return Err(Error::EmptyMatrix);
        }
        check_unique("column", &col_labels)?;
        if let Some(labels) = &row_labels {
            check_unique("row", labels)?;
            if labels.len() != rows.len() {
                return Err(Error::RaggedRow {
                    line: 0,
                    expected: rows.len(),
                    found: labels.len(),
                });
            }
        }
        let nrows = rows.len();
        let mut values = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::RaggedRow {
                    line: i as u64 + 2,
                    expected: ncols,
                    found: row.len(),
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if !(value >= 0.0) || !value.is_finite() {
                    return Err(Error::NegativeCell {
                        row: row_name(row_labels.as_deref(), i),
                        column: col_labels[j].clone(),
                        value,
                    });
                }
            }
            values.extend(row);
        }
        Ok(Self {
            row_labels,
            col_labels,
            values,
            nrows,
            kind_hint: KindHint::Unknown,
        })
    }

    pub fn with_kind_hint(mut self, kind_hint: KindHint) -> Self {
        self.kind_hint = kind_hint;
        self
    }

    pub fn kind_hint(&self) -> KindHint {
        self.kind_hint
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.ncols() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let w = self.ncols();
        &self.values[row * w..(row + 1) * w]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.nrows).map(|r| self.get(r, col)).collect()
    }

    /// Length `n` of each entity vector along `orientation`.
    pub fn vector_len(&self, orientation: Orientation) -> usize {
        match orientation {
            Orientation::Rows => self.ncols(),
            Orientation::Columns => self.nrows,
        }
    }

    /// Entity labels along `orientation`; unlabeled rows are numbered from 1.
    pub fn entity_labels(&self, orientation: Orientation) -> Vec<String> {
        match orientation {
            Orientation::Columns => self.col_labels.clone(),
            Orientation::Rows => (0..self.nrows)
                .map(|i| row_name(self.row_labels.as_deref(), i))
                .collect(),
        }
    }

    pub fn entities(&self, orientation: Orientation) -> Result<Vec<EntityVector>> {
        let labels = self.entity_labels(orientation);
        labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| {
                let coords = match orientation {
                    Orientation::Columns => self.column(i),
                    Orientation::Rows => self.row(i).to_vec(),
                };
                EntityVector::new(label, coords)
            })
            .collect()
    }

    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }
}

fn row_name(labels: Option<&[String]>, i: usize) -> String {
    match labels {
        Some(labels) => labels[i].clone(),
        None => (i + 1).to_string(),
    }
}

fn check_unique(axis: &'static str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel {
                axis,
                label: label.clone(),
            });
        }
    }
    Ok(())
}

/// Parses a header-first CSV/TSV matrix.
///
/// An empty top-left header cell marks the first column as row labels.
pub fn load_matrix<R: Read>(source: R, format: Format) -> Result<DataMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .delimiter(format.delimiter())
        .from_reader(source);

    let mut records = reader.records();
    let header = match records.next() {
        Some(record) => record?,
        None => return Err(Error::EmptyMatrix),
    };
    let has_row_labels = header.get(0).is_some_and(str::is_empty);
    let skip = usize::from(has_row_labels);
    let col_labels: Vec<String> = header.iter().skip(skip).map(str::to_owned).collect();
    let width = header.len();

    let mut row_labels = Vec::new();
    let mut rows = Vec::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        if record.len() != width {
            return Err(Error::RaggedRow {
                line,
                expected: width,
                found: record.len(),
            });
        }
        if has_row_labels {
            row_labels.push(record[0].to_owned());
        }
        let mut row = Vec::with_capacity(col_labels.len());
        for (j, cell) in record.iter().skip(skip).enumerate() {
            let value: f64 = cell.parse().map_err(|_| Error::BadNumber {
                line,
                column: col_labels[j].clone(),
                cell: cell.to_owned(),
            })?;
            if !value.is_finite() {
                return Err(Error::BadNumber {
                    line,
                    column: col_labels[j].clone(),
                    cell: cell.to_owned(),
                });
            }
            if value < 0.0 {
                let row_name = if has_row_labels {
                    record[0].to_owned()
                } else {
                    format!("line {line}")
                };
                return Err(Error::NegativeCell {
                    row: row_name,
                    column: col_labels[j].clone(),
                    value,
                });
            }
            row.push(value);
        }
        rows.push(row);
    }

    DataMatrix::new(has_row_labels.then_some(row_labels), col_labels, rows)
}

/// Writes `m` in the same dialect [`load_matrix`] reads. Numbers use the
/// shortest decimal that round-trips.
pub fn write_matrix<W: Write>(m: &DataMatrix, sink: W, format: Format) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .delimiter(format.delimiter())
        .from_writer(sink);
    let labeled = m.row_labels.is_some();
    let mut header = Vec::with_capacity(m.ncols() + 1);
    if labeled {
        header.push(String::new());
    }
    header.extend(m.col_labels.iter().cloned());
    writer.write_record(&header)?;
    for i in 0..m.nrows {
        let mut record = Vec::with_capacity(m.ncols() + 1);
        if let Some(labels) = &m.row_labels {
            record.push(labels[i].clone());
        }
        record.extend(m.row(i).iter().map(|v| v.to_string()));
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Symmetric entities × entities co-citation counts `Oᵀ O` of a binary
/// occurrence matrix `O`. The diagonal holds each entity's citation count.
pub fn cocitation(occ: &DataMatrix) -> Result<DataMatrix> {
    let k = occ.ncols();
    let mut counts = vec![0.0; k * k];
    let mut cited = Vec::with_capacity(k);
    for r in 0..occ.nrows {
        cited.clear();
        for (c, &value) in occ.row(r).iter().enumerate() {
            if value == 1.0 {
                cited.push(c);
            } else if value != 0.0 {
                return Err(Error::NonBinary {
                    row: row_name(occ.row_labels.as_deref(), r),
                    column: occ.col_labels[c].clone(),
                    value,
                });
            }
        }
        for &i in &cited {
            for &j in &cited {
                counts[i * k + j] += 1.0;
            }
        }
    }
    let rows = counts.chunks(k).map(<[f64]>::to_vec).collect();
    Ok(
        DataMatrix::new(Some(occ.col_labels.clone()), occ.col_labels.clone(), rows)?
            .with_kind_hint(KindHint::Cooccurrence),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropReason {
    ZeroVector,
    ConstantVector,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DropReason::ZeroVector => "zero vector",
            DropReason::ConstantVector => "constant vector",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dropped {
    pub label: String,
    pub reason: DropReason,
}

/// Entities that survived filtering plus a record of those that did not.
#[derive(Debug, Clone, PartialEq)]
pub struct Usable {
    pub kept: Vec<EntityVector>,
    pub dropped: Vec<Dropped>,
}

impl Usable {
    pub fn kept_labels(&self) -> Vec<&str> {
        self.kept.iter().map(EntityVector::label).collect()
    }
}

/// Splits entities into usable ones and dropped ones.
///
/// Zero vectors are always dropped; constant vectors are dropped when
/// `need_nonconstant` is set, as Pearson's r and the norm-ratio lines are
/// undefined for them.
pub fn usable_entities(
    m: &DataMatrix,
    orientation: Orientation,
    need_nonconstant: bool,
) -> Result<Usable> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for v in m.entities(orientation)? {
        let reason = if v.is_zero() {
            Some(DropReason::ZeroVector)
        } else if need_nonconstant && is_constant(&v) {
            Some(DropReason::ConstantVector)
        } else {
            None
        };
        match reason {
            Some(reason) => {
                warn!("dropping `{}`: {reason}", v.label());
                dropped.push(Dropped {
                    label: v.label().to_owned(),
                    reason,
                });
            }
            None => kept.push(v),
        }
    }
    Ok(Usable { kept, dropped })
}

/// Norm profiles of the entities usable in the sheaf model (nonzero and
/// non-constant), along with the dropped ones.
pub fn norm_profiles(
    m: &DataMatrix,
    orientation: Orientation,
) -> Result<(Vec<NormProfile>, Vec<Dropped>)> {
    let usable = usable_entities(m, orientation, true)?;
    let profiles = usable
        .kept
        .iter()
        .map(NormProfile::of)
        .collect::<Result<Vec<_>>>()?;
    Ok((profiles, usable.dropped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<DataMatrix> {
        load_matrix(text.as_bytes(), Format::Csv)
    }

    #[test]
    fn parses_plain_matrix() {
        let m = load("A,B\n1,1\n1,0\n0,1\n").unwrap();
        assert_eq!(m.nrows(), 3);
        assert_eq!(m.ncols(), 2);
        assert_eq!(m.col_labels(), ["A", "B"]);
        assert!(m.row_labels().is_none());
        assert_eq!(m.column(1), [1.0, 0.0, 1.0]);
    }

    #[test]
    fn detects_row_label_column() {
        let m = load(",A,B\np1,1,2.5\np2,0,3\n").unwrap();
        assert_eq!(m.row_labels().unwrap(), ["p1", "p2"]);
        assert_eq!(m.row(0), [1.0, 2.5]);
    }

    #[test]
    fn tsv_dialect() {
        let m = load_matrix("\tA\tB\nx\t1\t0\ny\t0\t1\n".as_bytes(), Format::Tsv).unwrap();
        assert_eq!(m.entity_labels(Orientation::Rows), ["x", "y"]);
    }

    #[test]
    fn negative_cell_names_its_coordinates() {
        let err = load(",A,B\np1,1,-1\n").unwrap_err();
        match err {
            Error::NegativeCell { row, column, .. } => {
                assert_eq!(row, "p1");
                assert_eq!(column, "B");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_row_reports_line() {
        let err = load("A,B\n1,1\n1\n").unwrap_err();
        assert!(matches!(err, Error::RaggedRow { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn duplicate_and_empty() {
        assert!(matches!(load("A,A\n1,1\n"), Err(Error::DuplicateLabel { .. })));
        assert!(matches!(load("A,B\n"), Err(Error::EmptyMatrix)));
        assert!(matches!(load(""), Err(Error::EmptyMatrix)));
        assert!(matches!(load("A,B\n1,x\n"), Err(Error::BadNumber { .. })));
    }

    #[test]
    fn cocitation_examples() {
        let occ = load("A,B\n1,1\n1,0\n0,1\n").unwrap();
        let c = cocitation(&occ).unwrap();
        assert_eq!(c.row(0), [2.0, 1.0]);
        assert_eq!(c.row(1), [1.0, 2.0]);
        assert_eq!(c.kind_hint(), KindHint::Cooccurrence);
        assert_eq!(c.row_labels().unwrap(), ["A", "B"]);

        let both = load("A,B\n1,1\n0,0\n").unwrap();
        let c = cocitation(&both).unwrap();
        assert_eq!(c.row(0), [1.0, 1.0]);
        assert_eq!(c.row(1), [1.0, 1.0]);

        let apart = load("A,B\n1,0\n0,1\n").unwrap();
        assert_eq!(cocitation(&apart).unwrap().get(0, 1), 0.0);
    }

    #[test]
    fn cocitation_requires_binary() {
        let err = cocitation(&load("A,B\n2,1\n0,1\n").unwrap()).unwrap_err();
        assert!(err.to_string().contains("occurrence matrix must be binary"));
    }

    #[test]
    fn usable_filtering() {
        let m = load("A,B,C,D\n0,1,2,1\n0,1,0,0\n0,1,1,0\n").unwrap();
        let u = usable_entities(&m, Orientation::Columns, true).unwrap();
        assert_eq!(u.kept_labels(), ["C", "D"]);
        assert_eq!(
            u.dropped,
            [
                Dropped { label: "A".into(), reason: DropReason::ZeroVector },
                Dropped { label: "B".into(), reason: DropReason::ConstantVector },
            ]
        );
        assert_eq!(u.dropped[0].reason.to_string(), "zero vector");

        let u = usable_entities(&m, Orientation::Columns, false).unwrap();
        assert_eq!(u.kept_labels(), ["B", "C", "D"]);
    }

    #[test]
    fn write_then_load_is_identity() {
        let m = load(",A,B c\nr1,0.1,3\nr2,1e-20,12345.678\n").unwrap();
        let mut buf = Vec::new();
        write_matrix(&m, &mut buf, Format::Csv).unwrap();
        assert_eq!(load_matrix(buf.as_slice(), Format::Csv).unwrap(), m);
    }
}
