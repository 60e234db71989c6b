//! Counterfactual generation.
//!
//! The motif-guided method targets the class opposite to the classifier's
//! prediction and overwrites the query, at the target motif's own
//! coordinates, with the matching window of the motif's source training
//! series. Nothing else in the query changes, and the result is returned
//! whether or not the prediction actually flips.
//!
//! The nearest-unlike-neighbour baseline replaces the whole query with the
//! closest training series of the target class.

use std::time::Instant;

use rayon::prelude::*;

use crate::classifier::{predict_batch, BlackBoxClassifier};
use crate::dataset::{Class, LabeledDataset, TimeSeries};
use crate::distance::sq_dist_bounded;
use crate::error::{Error, Result};
use crate::mining::MotifPair;

#[derive(Clone, Debug, PartialEq)]
pub struct Counterfactual {
    pub original: TimeSeries,
    pub perturbed: TimeSeries,
    /// `[start, end)` of the overwritten span.
    pub replaced_span: (usize, usize),
    pub original_pred: Class,
    pub target: Class,
    pub achieved_pred: Class,
    pub valid: bool,
}

/// Counterfactuals for a batch of queries, with the batch wall-clock time.
#[derive(Clone, Debug)]
pub struct CfBatch {
    pub counterfactuals: Vec<Counterfactual>,
    pub runtime_seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Motif-guided splice.
    Mgcf,
    /// Nearest unlike neighbour, copied whole.
    Nun,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mgcf => "mgcf",
            Method::Nun => "nun",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mgcf" => Ok(Method::Mgcf),
            "nun" => Ok(Method::Nun),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

fn splice(
    query: &TimeSeries,
    train: &LabeledDataset,
    motifs: &MotifPair,
    target: Class,
) -> Result<(TimeSeries, (usize, usize))> {
    let motif = motifs.for_class(target);
    let (start, end) = (motif.start_idx, motif.end_idx);
    let donor = train.series().get(motif.source_series).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "motif source series {} is out of range for a training set of {}",
            motif.source_series,
            train.len()
        ))
    })?;
    if start >= end || end > query.len() || end > donor.len() {
        return Err(Error::dimension(query.len(), end));
    }
    let mut values = query.values().to_vec();
    values[start..end].copy_from_slice(&donor[start..end]);
    Ok((TimeSeries::new(values)?, (start, end)))
}

fn check_len(query: &TimeSeries, train: &LabeledDataset) -> Result<()> {
    if query.len() != train.series_len() {
        return Err(Error::dimension(train.series_len(), query.len()));
    }
    Ok(())
}

fn finish<C>(
    f: &C,
    original: TimeSeries,
    original_pred: Class,
    perturbed: TimeSeries,
    span: (usize, usize),
) -> Result<Counterfactual>
where
    C: BlackBoxClassifier + ?Sized,
{
    let target = original_pred.opposite();
    let achieved_pred = f.predict(&perturbed)?;
    Ok(Counterfactual {
        original,
        perturbed,
        replaced_span: span,
        original_pred,
        target,
        achieved_pred,
        valid: achieved_pred == target,
    })
}

/// Motif-guided counterfactual for one query.
pub fn generate_cf<C>(
    query: &TimeSeries,
    f: &C,
    motifs: &MotifPair,
    train: &LabeledDataset,
) -> Result<Counterfactual>
where
    C: BlackBoxClassifier + ?Sized,
{
    check_len(query, train)?;
    let original_pred = f.predict(query)?;
    let (perturbed, span) = splice(query, train, motifs, original_pred.opposite())?;
    finish(f, query.clone(), original_pred, perturbed, span)
}

/// Nearest-unlike-neighbour counterfactual: the training series of the target
/// class closest to the query (ties to the lowest index), copied whole.
pub fn generate_nun_baseline<C>(query: &TimeSeries, f: &C, train: &LabeledDataset) -> Result<Counterfactual>
where
    C: BlackBoxClassifier + ?Sized,
{
    check_len(query, train)?;
    let original_pred = f.predict(query)?;
    let target = original_pred.opposite();
    let mut nearest: Option<(usize, f64)> = None;
    for i in train.class_indices(target) {
        let bound = nearest.map_or(f64::INFINITY, |(_, d)| d);
        if let Some(d) = sq_dist_bounded(query, &train.series()[i], bound) {
            nearest = Some((i, d));
        }
    }
    let (i, _) = nearest.ok_or_else(|| Error::Internal(format!("no training series of class {target}")))?;
    let perturbed = train.series()[i].clone();
    finish(
        f,
        query.clone(),
        original_pred,
        perturbed,
        (0, train.series_len()),
    )
}

fn run_batch<T, F>(queries: &[T], one: F) -> Result<CfBatch>
where
    T: Sync,
    F: Fn(&T) -> Result<Counterfactual> + Sync + Send,
{
    let started = Instant::now();
    let results: Vec<Result<Counterfactual>> = queries.par_iter().map(one).collect();
    let runtime_seconds = started.elapsed().as_secs_f64();
    let mut counterfactuals = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        counterfactuals.push(r.map_err(|e| e.at_index(i))?);
    }
    Ok(CfBatch {
        counterfactuals,
        runtime_seconds,
    })
}

/// Motif-guided counterfactuals for every query, in order. The recorded
/// runtime is the wall-clock time of the whole batch.
pub fn generate_cf_batch<C>(
    queries: &[TimeSeries],
    f: &C,
    motifs: &MotifPair,
    train: &LabeledDataset,
) -> Result<CfBatch>
where
    C: BlackBoxClassifier + ?Sized,
{
    // predictions for the batch first, then one splice per query
    let started = Instant::now();
    for (i, q) in queries.iter().enumerate() {
        check_len(q, train).map_err(|e| e.at_index(i))?;
    }
    let preds = predict_batch(f, queries)?;
    let indexed: Vec<(usize, Class)> = preds.into_iter().enumerate().collect();
    let mut batch = run_batch(&indexed, |&(i, pred)| {
        let (perturbed, span) = splice(&queries[i], train, motifs, pred.opposite())?;
        finish(f, queries[i].clone(), pred, perturbed, span)
    })?;
    batch.runtime_seconds = started.elapsed().as_secs_f64();
    Ok(batch)
}

pub fn generate_nun_batch<C>(queries: &[TimeSeries], f: &C, train: &LabeledDataset) -> Result<CfBatch>
where
    C: BlackBoxClassifier + ?Sized,
{
    run_batch(queries, |q| generate_nun_baseline(q, f, train))
}
