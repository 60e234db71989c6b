//! On-disk JSON artifacts: `motifs.json`, `cfs.json`, `report.json`, and the
//! comparison table built from several reports.
//!
//! Everything that varies between otherwise identical runs (wall-clock
//! timings) lives under a `metadata` key in `cfs.json`, so two runs over the
//! same inputs write byte-identical `motifs.json` and `cfs.json` files.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cf::{CfBatch, Counterfactual, Method};
use crate::dataset::Class;
use crate::error::{Error, Result};
use crate::metrics::{evaluate_instances, EvaluationReport, InstanceMetrics};
use crate::mining::MotifPair;

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_json_string(value)?).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_motifs(path: impl AsRef<Path>, motifs: &MotifPair) -> Result<()> {
    write_json(path, motifs)
}

pub fn read_motifs(path: impl AsRef<Path>) -> Result<MotifPair> {
    read_json(path)
}

/// One entry of `cfs.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfRecord {
    pub query_index: usize,
    pub original: Vec<f64>,
    pub perturbed: Vec<f64>,
    pub replaced_span: [usize; 2],
    pub original_pred: Class,
    pub target: Class,
    pub achieved_pred: Class,
    pub valid: bool,
}

impl CfRecord {
    pub fn from_counterfactual(query_index: usize, cf: &Counterfactual) -> Self {
        CfRecord {
            query_index,
            original: cf.original.values().to_vec(),
            perturbed: cf.perturbed.values().to_vec(),
            replaced_span: [cf.replaced_span.0, cf.replaced_span.1],
            original_pred: cf.original_pred,
            target: cf.target,
            achieved_pred: cf.achieved_pred,
            valid: cf.valid,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfMetadata {
    pub batch_runtime_seconds: f64,
    /// Classifier accuracy on the explained queries, when their labels are known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classifier_accuracy: Option<f64>,
}

/// Contents of `cfs.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfFile {
    pub method: Method,
    pub dataset: String,
    pub counterfactuals: Vec<CfRecord>,
    pub metadata: CfMetadata,
}

impl CfFile {
    pub fn from_batch(method: Method, dataset: impl Into<String>, batch: &CfBatch) -> Self {
        CfFile {
            method,
            dataset: dataset.into(),
            counterfactuals: batch
                .counterfactuals
                .iter()
                .enumerate()
                .map(|(i, cf)| CfRecord::from_counterfactual(i, cf))
                .collect(),
            metadata: CfMetadata {
                batch_runtime_seconds: batch.runtime_seconds,
                classifier_accuracy: None,
            },
        }
    }

    /// Recomputes every metric from the stored series.
    pub fn evaluate(&self) -> Result<EvaluationReport> {
        let per_instance = self
            .counterfactuals
            .iter()
            .map(|r| {
                InstanceMetrics::compute(&r.original, &r.perturbed, r.valid)
                    .map_err(|e| e.at_index(r.query_index))
            })
            .collect::<Result<Vec<_>>>()?;
        evaluate_instances(per_instance, self.metadata.batch_runtime_seconds)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// Always `"population"`.
    pub sd: String,
    pub n_instances: usize,
    /// Classifier accuracy on the explained queries, when their labels are known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classifier_accuracy: Option<f64>,
}

/// Contents of `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub method: Method,
    pub dataset: String,
    pub flip_rate: f64,
    pub runtime_seconds: f64,
    pub mining_runtime_seconds: Option<f64>,
    pub mean_proximity: f64,
    pub sd_proximity: f64,
    pub mean_sparsity: f64,
    pub sd_sparsity: f64,
    pub mean_segments: f64,
    pub sd_segments: f64,
    pub per_instance: Vec<InstanceMetrics>,
    pub metadata: ReportMetadata,
}

impl ReportFile {
    pub fn new(
        method: Method,
        dataset: impl Into<String>,
        report: EvaluationReport,
        mining_runtime_seconds: Option<f64>,
    ) -> Self {
        let a = report.aggregates;
        ReportFile {
            method,
            dataset: dataset.into(),
            flip_rate: report.flip_rate,
            runtime_seconds: report.runtime_seconds,
            mining_runtime_seconds,
            mean_proximity: a.proximity.mean,
            sd_proximity: a.proximity.sd,
            mean_sparsity: a.sparsity.mean,
            sd_sparsity: a.sparsity.sd,
            mean_segments: a.segments.mean,
            sd_segments: a.segments.sd,
            metadata: ReportMetadata {
                sd: "population".into(),
                n_instances: report.per_instance.len(),
                classifier_accuracy: None,
            },
            per_instance: report.per_instance,
        }
    }

    pub fn summary(&self) -> SummaryRow {
        SummaryRow {
            method: self.method,
            dataset: self.dataset.clone(),
            flip_rate: self.flip_rate,
            runtime_seconds: self.runtime_seconds,
            mining_runtime_seconds: self.mining_runtime_seconds,
            mean_proximity: self.mean_proximity,
            sd_proximity: self.sd_proximity,
            mean_sparsity: self.mean_sparsity,
            sd_sparsity: self.sd_sparsity,
            mean_segments: self.mean_segments,
            sd_segments: self.sd_segments,
        }
    }
}

/// Aggregate columns of a report, one row per (dataset, method).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub method: Method,
    pub dataset: String,
    pub flip_rate: f64,
    pub runtime_seconds: f64,
    pub mining_runtime_seconds: Option<f64>,
    pub mean_proximity: f64,
    pub sd_proximity: f64,
    pub mean_sparsity: f64,
    pub sd_sparsity: f64,
    pub mean_segments: f64,
    pub sd_segments: f64,
}

pub const SUMMARY_COLUMNS: [&str; 11] = [
    "method",
    "dataset",
    "flip_rate",
    "runtime_seconds",
    "mining_runtime_seconds",
    "mean_proximity",
    "sd_proximity",
    "mean_sparsity",
    "sd_sparsity",
    "mean_segments",
    "sd_segments",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SummaryRow {
    fn csv_fields(&self) -> [String; 11] {
        [
            self.method.to_string(),
            self.dataset.clone(),
            self.flip_rate.to_string(),
            self.runtime_seconds.to_string(),
            opt(self.mining_runtime_seconds),
            self.mean_proximity.to_string(),
            self.sd_proximity.to_string(),
            self.mean_sparsity.to_string(),
            self.sd_sparsity.to_string(),
            self.mean_segments.to_string(),
            self.sd_segments.to_string(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Loads report files, one summary row per (dataset, method) in input order.
pub fn compare(reports: &[impl AsRef<Path>]) -> Result<Vec<SummaryRow>> {
    if reports.is_empty() {
        return Err(Error::EmptyInput("no reports to compare"));
    }
    let mut rows: Vec<SummaryRow> = Vec::new();
    for path in reports {
        let path = path.as_ref();
        let report: ReportFile = read_json(path).map_err(|e| match e {
            Error::Json(source) => Error::Format {
                line: source.line(),
                message: format!("{}: not a report file: {source}", path.display()),
            },
            e => e,
        })?;
        let row = report.summary();
        match rows
            .iter_mut()
            .find(|r| r.dataset == row.dataset && r.method == row.method)
        {
            Some(existing) => *existing = row,
            None => rows.push(row),
        }
    }
    Ok(rows)
}

pub fn render_summary(rows: &[SummaryRow], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Json => to_json_string(&rows),
        TableFormat::Csv => {
            let mut out = SUMMARY_COLUMNS.join(",");
            out.push('\n');
            for row in rows {
                let fields: Vec<String> = row.csv_fields().iter().map(|f| csv_escape(f)).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Per-instance rows of one report, for plotting.
pub fn render_instances(report: &ReportFile, format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Json => to_json_string(&report.per_instance),
        TableFormat::Csv => {
            let mut out = String::from("dataset,method,query_index,proximity,sparsity,n_segments,valid\n");
            for (i, m) in report.per_instance.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{i},{},{},{},{}\n",
                    csv_escape(&report.dataset),
                    report.method,
                    m.proximity,
                    m.sparsity,
                    m.n_segments,
                    m.valid
                ));
            }
            Ok(out)
        }
    }
}
