//! Benchmark datasets: delimited-text loading, the synthetic Artset1
//! generator, and per-dimension bounds used to confine the search.
//!
//! Class labels travel with the points but the clustering algorithms only
//! ever see feature values; labels are consumed by [`crate::evaluation`].

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::Uniform;

use crate::error::{Error, Result};
use crate::SeededRng;

/// A single object: an m-dimensional feature vector and an optional class.
#[derive(Debug, Clone, PartialEq)]
pub struct DataPoint {
    pub values: Vec<f64>,
    pub label: Option<String>,
}

impl DataPoint {
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values,
            label: None,
        }
    }

    pub fn labeled(values: Vec<f64>, label: impl Into<String>) -> Self {
        Self {
            values,
            label: Some(label.into()),
        }
    }
}

/// Per-dimension closed box `[lower[d], upper[d]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Clamps a flattened `K x m` centroid vector coordinate-wise.
    pub fn clamp_flat(&self, coords: &mut [f64]) {
        let m = self.dim();
        for (c, x) in coords.iter_mut().enumerate() {
            let d = c % m;
            *x = x.clamp(self.lower[d], self.upper[d]);
        }
    }

    pub fn contains_flat(&self, coords: &[f64]) -> bool {
        let m = self.dim();
        coords
            .iter()
            .enumerate()
            .all(|(c, &x)| x >= self.lower[c % m] && x <= self.upper[c % m])
    }
}

/// An immutable collection of `n` objects sharing dimensionality `m`.
///
/// Features are stored row-major in one flat buffer. Labels, when present,
/// are interned into dense class indices in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    dim: usize,
    values: Vec<f64>,
    num_classes: usize,
    classes: Option<Vec<usize>>,
    class_names: Vec<String>,
    bounds: Bounds,
}

impl Dataset {
    /// Builds a dataset from points. `num_classes` is the number of clusters
    /// the benchmark asks for; when `None` it is the number of distinct
    /// labels, which requires every point to be labeled.
    pub fn new(
        name: impl Into<String>,
        points: Vec<DataPoint>,
        num_classes: Option<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidDataset(format!("{name}: no points")));
        }
        let dim = points[0].values.len();
        if dim == 0 {
            return Err(Error::InvalidDataset(format!("{name}: zero features")));
        }

        let labeled = points.iter().filter(|p| p.label.is_some()).count();
        if labeled != 0 && labeled != n {
            return Err(Error::InvalidDataset(format!(
                "{name}: {labeled} of {n} points labeled; labels must be all or nothing"
            )));
        }

        let mut values = Vec::with_capacity(n * dim);
        let mut lower = vec![f64::INFINITY; dim];
        let mut upper = vec![f64::NEG_INFINITY; dim];
        let mut class_ids: HashMap<String, usize> = HashMap::new();
        let mut class_names = Vec::new();
        let mut classes = Vec::with_capacity(if labeled > 0 { n } else { 0 });

        for (i, p) in points.into_iter().enumerate() {
            if p.values.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "{name}: point {i} has {} features, expected {dim}",
                    p.values.len()
                )));
            }
            for (d, &v) in p.values.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidDataset(format!(
                        "{name}: point {i} feature {d} is not finite"
                    )));
                }
                lower[d] = lower[d].min(v);
                upper[d] = upper[d].max(v);
            }
            values.extend_from_slice(&p.values);
            if let Some(label) = p.label {
                let next = class_names.len();
                let id = *class_ids.entry(label.clone()).or_insert_with(|| {
                    class_names.push(label);
                    next
                });
                classes.push(id);
            }
        }

        let num_classes = match num_classes {
            Some(k) => k,
            None if labeled > 0 => class_names.len(),
            None => {
                return Err(Error::InvalidDataset(format!(
                    "{name}: unlabeled data needs an explicit cluster count"
                )))
            }
        };
        if num_classes == 0 || num_classes > n {
            return Err(Error::InvalidDataset(format!(
                "{name}: cluster count {num_classes} must lie in [1, {n}]"
            )));
        }

        Ok(Self {
            name,
            dim,
            values,
            num_classes,
            classes: (labeled > 0).then_some(classes),
            class_names,
            bounds: Bounds { lower, upper },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.dim)
    }

    /// Row-major feature buffer of length `n * m`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Dense class index per point, if the data is labeled.
    pub fn classes(&self) -> Option<&[usize]> {
        self.classes.as_deref()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn lower_bounds(&self) -> &[f64] {
        &self.bounds.lower
    }

    pub fn upper_bounds(&self) -> &[f64] {
        &self.bounds.upper
    }

    /// Writes the dataset as comma-separated text, label last when present.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.points().enumerate() {
            let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(","));
            if let Some(classes) = &self.classes {
                out.push(',');
                out.push_str(&self.class_names[classes[i]]);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    Comma,
    Whitespace,
    Char(char),
}

impl Delimiter {
    fn split<'a>(&self, line: &'a str) -> Vec<&'a str> {
        match self {
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
            Delimiter::Char(c) => line.split(*c).map(str::trim).collect(),
            Delimiter::Whitespace => line.split_whitespace().collect(),
        }
    }
}

impl std::str::FromStr for Delimiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "," | "comma" => Ok(Delimiter::Comma),
            "whitespace" | "space" | " " => Ok(Delimiter::Whitespace),
            "tab" | "\t" => Ok(Delimiter::Char('\t')),
            other => {
                let mut chars = other.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(Delimiter::Char(c)),
                    _ => Err(Error::Schema(format!("unknown delimiter {other:?}"))),
                }
            }
        }
    }
}

/// Column roles for a delimited file. Every column other than the label
/// (and any explicitly ignored ones) is a feature.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    pub delimiter: Delimiter,
    /// Zero-based label column.
    pub label_column: Option<usize>,
    pub ignore_columns: Vec<usize>,
    pub has_header: bool,
    /// Cluster count; defaults to the number of distinct labels.
    pub num_classes: Option<usize>,
}

impl Default for Schema {
    fn default() -> Self {
        Self {
            delimiter: Delimiter::Comma,
            label_column: None,
            ignore_columns: Vec::new(),
            has_header: false,
            num_classes: None,
        }
    }
}

impl Schema {
    pub fn csv_with_label(label_column: usize) -> Self {
        Self {
            label_column: Some(label_column),
            ..Self::default()
        }
    }
}

/// Loads a delimited text file. Blank lines are skipped; row and column
/// numbers in errors are one-based and count data rows only.
pub fn load_delimited(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_delimited(&name, path, &text, schema)
}

/// Parses delimited text already in memory. `path` is only used in errors.
pub fn parse_delimited(
    name: &str,
    path: &Path,
    text: &str,
    schema: &Schema,
) -> Result<Dataset> {
    let path_buf = || PathBuf::from(path);
    let mut expected_cols = None;
    let mut points = Vec::new();

    let lines = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .skip(usize::from(schema.has_header));

    for (row_idx, line) in lines.enumerate() {
        let row = row_idx + 1;
        let cells = schema.delimiter.split(line);
        let expected = *expected_cols.get_or_insert(cells.len());
        if cells.len() != expected {
            return Err(Error::RaggedRow {
                path: path_buf(),
                row,
                expected,
                found: cells.len(),
            });
        }
        if let Some(lc) = schema.label_column {
            if lc >= expected {
                return Err(Error::Schema(format!(
                    "label column {} out of range for {expected} columns",
                    lc + 1
                )));
            }
        }

        let mut values = Vec::with_capacity(expected);
        let mut label = None;
        for (col_idx, cell) in cells.iter().enumerate() {
            if Some(col_idx) == schema.label_column {
                label = Some(cell.to_string());
                continue;
            }
            if schema.ignore_columns.contains(&col_idx) {
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| Error::NonNumericCell {
                path: path_buf(),
                row,
                column: col_idx + 1,
                cell: cell.to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::NonFiniteCell {
                    path: path_buf(),
                    row,
                    column: col_idx + 1,
                    cell: cell.to_string(),
                });
            }
            values.push(v);
        }
        points.push(DataPoint { values, label });
    }

    if points.is_empty() {
        return Err(Error::EmptyFile { path: path_buf() });
    }
    Dataset::new(name, points, schema.num_classes)
}

/// Value ranges of the five Artset1 classes: three coordinates per point,
/// each uniform on its class's interval.
pub const ARTSET1_RANGES: [(f64, f64); 5] = [
    (85.0, 100.0),
    (70.0, 85.0),
    (55.0, 70.0),
    (40.0, 55.0),
    (25.0, 40.0),
];
pub const ARTSET1_PER_CLASS: usize = 50;
pub const ARTSET1_DIM: usize = 3;

/// Generates the 250-point, 3-dimensional, 5-class Artset1 dataset.
///
/// Points are emitted class by class. Coordinates lie strictly inside their
/// class's open interval (an endpoint draw is rejected and redrawn).
pub fn generate_artset1(seed: u64) -> Dataset {
    let mut rng = crate::rng_from_seed(seed);
    let mut points = Vec::with_capacity(ARTSET1_RANGES.len() * ARTSET1_PER_CLASS);
    for (class, &(lo, hi)) in ARTSET1_RANGES.iter().enumerate() {
        let dist = Uniform::new(lo, hi).expect("valid artset1 range");
        for _ in 0..ARTSET1_PER_CLASS {
            let values = (0..ARTSET1_DIM)
                .map(|_| open_interval_draw(&mut rng, &dist, lo))
                .collect();
            points.push(DataPoint::labeled(values, (class + 1).to_string()));
        }
    }
    Dataset::new("artset1", points, None).expect("artset1 construction is valid")
}

fn open_interval_draw(rng: &mut SeededRng, dist: &Uniform<f64>, lo: f64) -> f64 {
    loop {
        let v = rng.sample(dist);
        if v > lo {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn single_row_bounds_are_the_point() {
        let f = write_tmp("1.0,2.0,A\n");
        let ds = load_delimited(f.path(), &Schema::csv_with_label(2)).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.lower_bounds(), &[1.0, 2.0]);
        assert_eq!(ds.upper_bounds(), &[1.0, 2.0]);
        assert_eq!(ds.num_classes(), 1);
    }

    #[test]
    fn non_numeric_cell_reports_position() {
        let f = write_tmp("1.0,abc,A\n");
        let err = load_delimited(f.path(), &Schema::csv_with_label(2)).unwrap_err();
        match err {
            Error::NonNumericCell {
                row, column, cell, ..
            } => {
                assert_eq!((row, column), (1, 2));
                assert_eq!(cell, "abc");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn missing_value_marker_is_an_error() {
        let f = write_tmp("1,2,A\n1,?,B\n");
        let err = load_delimited(f.path(), &Schema::csv_with_label(2)).unwrap_err();
        assert!(matches!(err, Error::NonNumericCell { row: 2, column: 2, .. }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let f = write_tmp("1,2,A\n1,2,3,B\n");
        let err = load_delimited(f.path(), &Schema::csv_with_label(2)).unwrap_err();
        assert!(matches!(
            err,
            Error::RaggedRow {
                row: 2,
                expected: 3,
                found: 4,
                ..
            }
        ));
    }

    #[test]
    fn empty_file_rejected() {
        let f = write_tmp("\n\n");
        let err = load_delimited(f.path(), &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::EmptyFile { .. }));
    }

    #[test]
    fn unreadable_file_rejected() {
        let err = load_delimited("/nonexistent/x.csv", &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn whitespace_delimited_with_label_first() {
        let f = write_tmp("a 1 2\nb  3   4\n\n");
        let schema = Schema {
            delimiter: Delimiter::Whitespace,
            label_column: Some(0),
            ..Schema::default()
        };
        let ds = load_delimited(f.path(), &schema).unwrap();
        assert_eq!(ds.values(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(ds.classes(), Some(&[0, 1][..]));
    }

    #[test]
    fn unlabeled_needs_cluster_count() {
        let f = write_tmp("1,2\n3,4\n");
        assert!(load_delimited(f.path(), &Schema::default()).is_err());
        let schema = Schema {
            num_classes: Some(2),
            ..Schema::default()
        };
        let ds = load_delimited(f.path(), &schema).unwrap();
        assert_eq!(ds.num_classes(), 2);
        assert!(ds.classes().is_none());
    }

    #[test]
    fn artset1_shape_and_ranges() {
        let ds = generate_artset1(7);
        assert_eq!((ds.len(), ds.dim(), ds.num_classes()), (250, 3, 5));
        let classes = ds.classes().unwrap();
        let mut counts = [0usize; 5];
        for (i, p) in ds.points().enumerate() {
            let c = classes[i];
            counts[c] += 1;
            let (lo, hi) = ARTSET1_RANGES[c];
            assert!(p.iter().all(|&v| v > lo && v < hi));
        }
        assert_eq!(counts, [50; 5]);
        // class 0 is the (85, 100) block
        assert!(ds.points().take(50).flatten().all(|&v| (85.0..=100.0).contains(&v)));
    }

    #[test]
    fn artset1_deterministic() {
        assert_eq!(generate_artset1(3), generate_artset1(3));
        assert_ne!(generate_artset1(3).values(), generate_artset1(4).values());
    }

    #[test]
    fn csv_round_trip() {
        let ds = generate_artset1(11);
        let text = ds.to_csv_string();
        let back = parse_delimited("artset1", Path::new("mem"), &text, &Schema::csv_with_label(3))
            .unwrap();
        assert_eq!(back, ds);
    }
}
