//! Data ingestion and the immutable point set all algorithms operate on.
//!
//! A [`DataSet`] is an `N x l` matrix of finite coordinates plus an optional
//! ground-truth class vector with classes numbered contiguously from 1.
//! Instances are immutable after construction and safe to share across
//! threads.

use std::path::Path;

use ndarray::{Array1, Array2, ArrayView1};

use crate::error::{Error, Result};

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    /// The last column of every row.
    Last,
    /// The column with this header name (requires a header row).
    Named(String),
}

/// An immutable set of `N` points in `l` dimensions with optional
/// ground-truth classes (1-based, contiguous).
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    points: Array2<f64>,
    truth: Option<Vec<usize>>,
    name: String,
}

impl DataSet {
    /// Builds a dataset, validating every invariant: at least one point and
    /// one dimension, all coordinates finite, truth (if any) of matching
    /// length with classes exactly `1..=K`.
    pub fn new(points: Array2<f64>, truth: Option<Vec<usize>>, name: impl Into<String>) -> Result<Self> {
        if points.nrows() == 0 || points.ncols() == 0 {
            return Err(Error::EmptyInput("dataset must have N >= 1 and l >= 1".into()));
        }
        if let Some(bad) = points.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite coordinate {bad} in dataset"
            )));
        }
        if let Some(t) = &truth {
            if t.len() != points.nrows() {
                return Err(Error::InvalidParameter(format!(
                    "truth length {} does not match N = {}",
                    t.len(),
                    points.nrows()
                )));
            }
            let k = *t.iter().max().expect("non-empty");
            let mut seen = vec![false; k + 1];
            for &c in t {
                if c == 0 {
                    return Err(Error::InvalidParameter("class index 0 in truth (classes are 1-based)".into()));
                }
                seen[c] = true;
            }
            if !seen[1..=k].iter().all(|&s| s) {
                return Err(Error::InvalidParameter(
                    "truth classes are not contiguous from 1".into(),
                ));
            }
        }
        Ok(Self { points, truth, name: name.into() })
    }

    pub fn n(&self) -> usize {
        self.points.nrows()
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn points(&self) -> &Array2<f64> {
        &self.points
    }

    pub fn point(&self, i: usize) -> ArrayView1<'_, f64> {
        self.points.row(i)
    }

    pub fn truth(&self) -> Option<&[usize]> {
        self.truth.as_deref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of distinct truth classes, if truth is present.
    pub fn truth_classes(&self) -> Option<usize> {
        self.truth.as_ref().map(|t| *t.iter().max().expect("non-empty"))
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bounding_box(&self) -> (Array1<f64>, Array1<f64>) {
        let mut lo = self.points.row(0).to_owned();
        let mut hi = lo.clone();
        for row in self.points.rows() {
            for (d, &v) in row.iter().enumerate() {
                if v < lo[d] {
                    lo[d] = v;
                }
                if v > hi[d] {
                    hi[d] = v;
                }
            }
        }
        (lo, hi)
    }

    /// Diagonal length of the bounding box; the data-scale used for merge
    /// and elimination thresholds.
    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        squared_distance(lo.view(), hi.view()).sqrt()
    }

    /// Per-class empirical means (`K x l`), rows ordered by class index.
    /// `None` when no truth is attached.
    pub fn class_means(&self) -> Option<Array2<f64>> {
        let truth = self.truth.as_ref()?;
        let k = self.truth_classes()?;
        let mut sums = Array2::<f64>::zeros((k, self.dim()));
        let mut counts = vec![0usize; k];
        for (i, &c) in truth.iter().enumerate() {
            let mut row = sums.row_mut(c - 1);
            row += &self.points.row(i);
            counts[c - 1] += 1;
        }
        for (j, &cnt) in counts.iter().enumerate() {
            let mut row = sums.row_mut(j);
            row /= cnt as f64;
        }
        Some(sums)
    }
}

/// Squared Euclidean distance between two equal-length vectors.
///
/// Panics on length mismatch (contract violation).
pub fn squared_distance(x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>) -> f64 {
    assert_eq!(x.len(), y.len(), "squared_distance: length mismatch");
    let mut acc = 0.0;
    for (a, b) in x.iter().zip(y.iter()) {
        let d = a - b;
        acc += d * d;
    }
    acc
}

/// Euclidean distance between two equal-length vectors.
pub fn euclidean_distance(x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>) -> f64 {
    squared_distance(x, y).sqrt()
}

/// Loads a comma-separated file into a [`DataSet`].
///
/// Every non-label cell must parse as a finite real. When `label_column` is
/// given, that column is extracted as ground truth; arbitrary label strings
/// are re-indexed to `1..=K` in order of first appearance.
pub fn load_csv(path: impl AsRef<Path>, has_header: bool, label_column: Option<LabelColumn>) -> Result<DataSet> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;

    let header: Option<Vec<String>> = if has_header {
        Some(reader.headers()?.iter().map(|s| s.to_string()).collect())
    } else {
        None
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut raw_labels: Vec<String> = Vec::new();
    let mut arity: Option<usize> = None;
    let mut label_idx: Option<usize> = None;

    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let width = record.len();
        match arity {
            None => {
                arity = Some(width);
                label_idx = match &label_column {
                    None => None,
                    Some(LabelColumn::Last) => {
                        if width < 2 {
                            return Err(Error::Ingestion {
                                line,
                                msg: "label column requested but rows have a single column".into(),
                            });
                        }
                        Some(width - 1)
                    }
                    Some(LabelColumn::Named(name)) => {
                        let header = header.as_ref().ok_or_else(|| Error::Ingestion {
                            line,
                            msg: format!("label column '{name}' requires a header row"),
                        })?;
                        let idx = header.iter().position(|h| h == name).ok_or_else(|| Error::Ingestion {
                            line,
                            msg: format!("no column named '{name}' in header"),
                        })?;
                        Some(idx)
                    }
                };
            }
            Some(expected) if expected != width => {
                return Err(Error::Ingestion {
                    line,
                    msg: format!("expected {expected} columns, found {width}"),
                });
            }
            Some(_) => {}
        }
        let mut coords = Vec::with_capacity(width.saturating_sub(label_idx.is_some() as usize));
        for (col, cell) in record.iter().enumerate() {
            if Some(col) == label_idx {
                raw_labels.push(cell.to_string());
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| Error::Ingestion {
                line,
                msg: format!("cell '{cell}' in column {} is not a number", col + 1),
            })?;
            if !value.is_finite() {
                return Err(Error::Ingestion {
                    line,
                    msg: format!("cell '{cell}' in column {} is not finite", col + 1),
                });
            }
            coords.push(value);
        }
        rows.push(coords);
    }

    if rows.is_empty() {
        return Err(Error::EmptyInput(format!("no data rows in {}", path.display())));
    }
    let dim = rows[0].len();
    if dim == 0 {
        return Err(Error::EmptyInput("rows contain no feature columns".into()));
    }
    let mut points = Array2::<f64>::zeros((rows.len(), dim));
    for (i, row) in rows.iter().enumerate() {
        for (d, &v) in row.iter().enumerate() {
            points[[i, d]] = v;
        }
    }

    let truth = if label_idx.is_some() {
        // Re-index arbitrary label strings by first appearance.
        let mut order: Vec<String> = Vec::new();
        let mut classes = Vec::with_capacity(raw_labels.len());
        for label in &raw_labels {
            let class = match order.iter().position(|l| l == label) {
                Some(pos) => pos + 1,
                None => {
                    order.push(label.clone());
                    order.len()
                }
            };
            classes.push(class);
        }
        Some(classes)
    } else {
        None
    };

    DataSet::new(points, truth, name)
}

/// Writes a dataset back to CSV (no header). Coordinates are printed with
/// shortest round-trip formatting, so reloading yields bit-identical points.
/// Truth classes, when present, go to an extra last column.
pub fn write_csv(data: &DataSet, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    for (i, row) in data.points().rows().into_iter().enumerate() {
        let mut record: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        if let Some(truth) = data.truth() {
            record.push(truth[i].to_string());
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use std::io::Write;

    fn tmp_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().expect("tmp file");
        f.write_all(content.as_bytes()).expect("write");
        f
    }

    #[test]
    fn loads_plain_numeric_rows() {
        let f = tmp_csv("1,2\n3,4\n5,6\n");
        let d = load_csv(f.path(), false, None).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.dim(), 2);
        assert!(d.truth().is_none());
        assert_eq!(d.points()[[2, 1]], 6.0);
    }

    #[test]
    fn reindexes_labels_by_first_appearance() {
        let f = tmp_csv("1,2,a\n3,4,a\n5,6,b\n");
        let d = load_csv(f.path(), false, Some(LabelColumn::Last)).unwrap();
        assert_eq!(d.truth().unwrap(), &[1, 1, 2]);
        assert_eq!(d.dim(), 2);
    }

    #[test]
    fn named_label_column_via_header() {
        let f = tmp_csv("x,y,species\n1,2,b\n3,4,a\n5,6,b\n");
        let d = load_csv(f.path(), true, Some(LabelColumn::Named("species".into()))).unwrap();
        assert_eq!(d.truth().unwrap(), &[1, 2, 1]);
    }

    #[test]
    fn malformed_rows_name_the_line() {
        let f = tmp_csv("1,2\n3,oops\n");
        let err = load_csv(f.path(), false, None).unwrap_err();
        match err {
            Error::Ingestion { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }

        let f = tmp_csv("1,2\n3\n");
        let err = load_csv(f.path(), false, None).unwrap_err();
        match err {
            Error::Ingestion { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_an_error() {
        let f = tmp_csv("");
        assert!(matches!(load_csv(f.path(), false, None), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn non_finite_cells_are_rejected() {
        let f = tmp_csv("1,2\nNaN,4\n");
        assert!(matches!(load_csv(f.path(), false, None), Err(Error::Ingestion { line: 2, .. })));
    }

    #[test]
    fn squared_distance_examples() {
        let x = array![0.0, 0.0];
        let y = array![3.0, 4.0];
        assert_eq!(squared_distance(x.view(), y.view()), 25.0);
        assert_eq!(squared_distance(x.view(), x.view()), 0.0);
        let a = array![1.5, 3.5];
        let b = array![1.75, 2.75];
        assert_eq!(squared_distance(a.view(), b.view()), 0.625);
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn squared_distance_length_mismatch_panics() {
        let x = array![0.0];
        let y = array![0.0, 1.0];
        squared_distance(x.view(), y.view());
    }

    #[test]
    fn truth_must_be_contiguous_from_one() {
        let pts = array![[0.0], [1.0]];
        assert!(DataSet::new(pts.clone(), Some(vec![1, 3]), "x").is_err());
        assert!(DataSet::new(pts.clone(), Some(vec![0, 1]), "x").is_err());
        assert!(DataSet::new(pts, Some(vec![2, 1]), "x").is_ok());
    }

    #[test]
    fn class_means_are_per_class_averages() {
        let pts = array![[0.0, 0.0], [2.0, 0.0], [10.0, 4.0]];
        let d = DataSet::new(pts, Some(vec![1, 1, 2]), "x").unwrap();
        let means = d.class_means().unwrap();
        assert_eq!(means, array![[1.0, 0.0], [10.0, 4.0]]);
    }
}
