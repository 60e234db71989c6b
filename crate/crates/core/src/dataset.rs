//! Labeled univariate time series and the UCR archive text format.
//!
//! A UCR file holds one series per line: the raw class label first, then the
//! samples, separated by tabs or spaces. Raw labels vary between datasets
//! (`-1/1`, `1/2`, `0/1`, ...) and are mapped onto [`Class`] either through an
//! explicit [`LabelMap`] or by ascending order of the distinct raw values.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary class identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Class {
    Zero,
    One,
}

impl Class {
    pub const BOTH: [Class; 2] = [Class::Zero, Class::One];

    pub fn index(self) -> usize {
        match self {
            Class::Zero => 0,
            Class::One => 1,
        }
    }

    /// The complementary class.
    pub fn opposite(self) -> Class {
        match self {
            Class::Zero => Class::One,
            Class::One => Class::Zero,
        }
    }
}

impl From<Class> for u8 {
    fn from(c: Class) -> u8 {
        c.index() as u8
    }
}

impl TryFrom<u8> for Class {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Class::Zero),
            1 => Ok(Class::One),
            other => Err(format!("class id must be 0 or 1, got {other}")),
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A finite, non-empty sequence of samples.
///
/// Mining additionally needs `len() >= 4`; that is checked where it matters
/// rather than here, so tiny hand-built series stay usable for classifiers
/// and metrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("series is empty".into()));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "non-finite value {} at position {pos}",
                values[pos]
            )));
        }
        Ok(TimeSeries(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Deref for TimeSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

impl From<TimeSeries> for Vec<f64> {
    fn from(ts: TimeSeries) -> Vec<f64> {
        ts.0
    }
}

/// Explicit mapping from raw UCR labels to classes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LabelMap(Vec<(f64, Class)>);

impl LabelMap {
    pub fn new(pairs: impl IntoIterator<Item = (f64, Class)>) -> Self {
        LabelMap(pairs.into_iter().collect())
    }

    pub fn get(&self, raw: f64) -> Option<Class> {
        self.0
            .iter()
            .find(|(k, _)| k.total_cmp(&raw) == Ordering::Equal)
            .map(|&(_, c)| c)
    }
}

impl std::str::FromStr for LabelMap {
    type Err = Error;

    /// Parses `raw:class` pairs separated by commas, e.g. `-1:0,1:1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (raw, class) = item.rsplit_once(':').ok_or_else(|| {
                Error::InvalidArgument(format!("label map entry {item:?} is not raw:class"))
            })?;
            let raw: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad raw label {raw:?}")))?;
            let class: u8 = class
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad class {class:?}")))?;
            let class = Class::try_from(class).map_err(Error::InvalidArgument)?;
            pairs.push((raw, class));
        }
        Ok(LabelMap(pairs))
    }
}

/// A binary labeled dataset of equal-length series. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset {
    name: String,
    series: Vec<TimeSeries>,
    labels: Vec<Class>,
}

#[derive(Serialize)]
struct DatasetDump<'a> {
    name: &'a str,
    n: usize,
    m: usize,
    labels: &'a [Class],
    series: &'a [TimeSeries],
}

impl LabeledDataset {
    /// Validates the dataset invariants: at least two series, equal counts of
    /// series and labels, a common length, and both classes present.
    pub fn new(name: impl Into<String>, series: Vec<TimeSeries>, labels: Vec<Class>) -> Result<Self> {
        if series.len() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} series but {} labels",
                series.len(),
                labels.len()
            )));
        }
        if series.len() < 2 {
            return Err(Error::InvalidDataset(format!(
                "need at least 2 series, got {}",
                series.len()
            )));
        }
        let m = series[0].len();
        if let Some(i) = series.iter().position(|s| s.len() != m) {
            return Err(Error::InvalidDataset(format!(
                "series {i} has length {}, expected {m}",
                series[i].len()
            )));
        }
        for c in Class::BOTH {
            if !labels.contains(&c) {
                return Err(Error::InvalidDataset(format!("class {c} has no series")));
            }
        }
        Ok(LabeledDataset {
            name: name.into(),
            series,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    pub fn labels(&self) -> &[Class] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Common length `m` of every series.
    pub fn series_len(&self) -> usize {
        self.series[0].len()
    }

    pub fn class_count(&self, c: Class) -> usize {
        self.labels.iter().filter(|&&l| l == c).count()
    }

    /// Indices of the series labeled `c`, ascending.
    pub fn class_indices(&self, c: Class) -> Vec<usize> {
        class_indices(&self.labels, c)
    }

    /// Renders the dataset in UCR text form (tab-separated, class ids as labels).
    ///
    /// Values use the shortest representation that parses back to the same
    /// `f64`, so a write/read cycle is lossless.
    pub fn to_ucr_string(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.series.iter().zip(&self.labels) {
            write!(out, "{c}").unwrap();
            for v in s.values() {
                write!(out, "\t{v:?}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn write_ucr(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_ucr_string()).map_err(|e| Error::io(path, e))
    }

    /// JSON dump `{name, n, m, labels, series}`.
    pub fn to_json(&self) -> Result<String> {
        let dump = DatasetDump {
            name: &self.name,
            n: self.len(),
            m: self.series_len(),
            labels: &self.labels,
            series: &self.series,
        };
        Ok(serde_json::to_string_pretty(&dump)?)
    }
}

pub fn class_indices(labels: &[Class], c: Class) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == c)
        .map(|(i, _)| i)
        .collect()
}

/// Reads a UCR file. The dataset name is the file stem with any `_TRAIN` or
/// `_TEST` suffix removed.
pub fn load_ucr(path: impl AsRef<Path>, label_map: Option<&LabelMap>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ucr(&text, &dataset_name(path), label_map)
}

/// Reads a train/test pair so both files share one label mapping. Without an
/// explicit map, the default is inferred from the training file's labels.
pub fn load_ucr_split(
    train_path: impl AsRef<Path>,
    test_path: impl AsRef<Path>,
    label_map: Option<&LabelMap>,
) -> Result<(LabeledDataset, LabeledDataset)> {
    let train_path = train_path.as_ref();
    let test_path = test_path.as_ref();
    let train_text = std::fs::read_to_string(train_path).map_err(|e| Error::io(train_path, e))?;
    let test_text = std::fs::read_to_string(test_path).map_err(|e| Error::io(test_path, e))?;
    let inferred;
    let map = match label_map {
        Some(m) => m,
        None => {
            inferred = infer_label_map(&train_text)?;
            &inferred
        }
    };
    let train = parse_ucr(&train_text, &dataset_name(train_path), Some(map))?;
    let test = parse_ucr(&test_text, &dataset_name(test_path), Some(map))?;
    Ok((train, test))
}

/// Default mapping for a UCR text: distinct raw labels in ascending order
/// become class 0 and class 1.
pub fn infer_label_map(text: &str) -> Result<LabelMap> {
    let mut distinct = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let Some(token) = line.split_whitespace().next() else {
            continue;
        };
        let raw: f64 = token.parse().map_err(|_| Error::Parse {
            line: i + 1,
            token: token.to_string(),
        })?;
        distinct.push(raw);
    }
    distinct.sort_by(f64::total_cmp);
    distinct.dedup_by(|a, b| a.total_cmp(b) == Ordering::Equal);
    if distinct.len() > 2 {
        return Err(Error::UnsupportedCardinality {
            found: distinct.len(),
        });
    }
    Ok(LabelMap::new(distinct.into_iter().zip(Class::BOTH)))
}

pub fn dataset_name(path: &Path) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    for suffix in ["_TRAIN", "_TEST"] {
        if let Some(base) = stem.strip_suffix(suffix) {
            return base.to_string();
        }
    }
    stem
}

pub fn parse_ucr(text: &str, name: &str, label_map: Option<&LabelMap>) -> Result<LabeledDataset> {
    let mut raw_labels = Vec::new();
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut arity = None;

    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        if line.trim().is_empty() {
            continue;
        }
        let mut values = Vec::new();
        for token in line.split_whitespace() {
            let v: f64 = token.parse().map_err(|_| Error::Parse {
                line: lineno,
                token: token.to_string(),
            })?;
            values.push(v);
        }
        match arity {
            None => arity = Some(values.len()),
            Some(a) if a != values.len() => {
                return Err(Error::Format {
                    line: lineno,
                    message: format!("row has {} fields, expected {a}", values.len()),
                })
            }
            _ => {}
        }
        if values.len() < 2 {
            return Err(Error::Format {
                line: lineno,
                message: "row needs a label and at least one value".into(),
            });
        }
        raw_labels.push(values[0]);
        values.remove(0);
        rows.push((lineno, values));
    }

    let inferred = infer_label_map(text)?;
    let map = label_map.unwrap_or(&inferred);

    let mut series = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    for ((lineno, values), raw) in rows.into_iter().zip(raw_labels) {
        let class = map.get(raw).ok_or_else(|| Error::Format {
            line: lineno,
            message: format!("raw label {raw} is not in the label map"),
        })?;
        let ts = TimeSeries::new(values).map_err(|e| Error::Format {
            line: lineno,
            message: e.to_string(),
        })?;
        series.push(ts);
        labels.push(class);
    }
    LabeledDataset::new(name, series, labels)
}
