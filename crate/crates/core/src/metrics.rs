//! Counterfactual quality metrics: proximity (L1), sparsity (share of
//! untouched points), number of perturbed segments, and flip rate.

use serde::{Deserialize, Serialize};

use crate::cf::Counterfactual;
use crate::error::{Error, Result};

fn same_len(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::dimension(x.len(), y.len()));
    }
    Ok(())
}

/// L1 distance.
pub fn proximity(x: &[f64], x_cf: &[f64]) -> Result<f64> {
    same_len(x, x_cf)?;
    Ok(x.iter().zip(x_cf).map(|(a, b)| (b - a).abs()).sum())
}

/// One minus the fraction of points that differ. Comparison is exact: a
/// spliced value is a bit-for-bit copy.
pub fn sparsity(x: &[f64], x_cf: &[f64]) -> Result<f64> {
    same_len(x, x_cf)?;
    if x.is_empty() {
        return Ok(1.0);
    }
    let changed = x.iter().zip(x_cf).filter(|(a, b)| a != b).count();
    Ok(1.0 - changed as f64 / x.len() as f64)
}

/// Number of maximal runs of consecutive changed points.
pub fn count_segments(x: &[f64], x_cf: &[f64]) -> Result<usize> {
    same_len(x, x_cf)?;
    let mut segments = 0;
    let mut inside = false;
    for (a, b) in x.iter().zip(x_cf) {
        let changed = a != b;
        if changed && !inside {
            segments += 1;
        }
        inside = changed;
    }
    Ok(segments)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMetrics {
    pub proximity: f64,
    pub sparsity: f64,
    pub n_segments: usize,
    pub valid: bool,
}

impl InstanceMetrics {
    pub fn compute(original: &[f64], perturbed: &[f64], valid: bool) -> Result<Self> {
        Ok(InstanceMetrics {
            proximity: proximity(original, perturbed)?,
            sparsity: sparsity(original, perturbed)?,
            n_segments: count_segments(original, perturbed)?,
            valid,
        })
    }
}

/// Arithmetic mean and population standard deviation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

impl MeanSd {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        let values: Vec<f64> = values.into_iter().collect();
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Some(MeanSd { mean, sd: var.sqrt() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub proximity: MeanSd,
    pub sparsity: MeanSd,
    pub segments: MeanSd,
}

impl Aggregates {
    pub fn of(per_instance: &[InstanceMetrics]) -> Option<Self> {
        Some(Aggregates {
            proximity: MeanSd::of(per_instance.iter().map(|m| m.proximity))?,
            sparsity: MeanSd::of(per_instance.iter().map(|m| m.sparsity))?,
            segments: MeanSd::of(per_instance.iter().map(|m| m.n_segments as f64))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport {
    pub per_instance: Vec<InstanceMetrics>,
    pub flip_rate: f64,
    pub runtime_seconds: f64,
    pub aggregates: Aggregates,
}

pub fn flip_rate(per_instance: &[InstanceMetrics]) -> Result<f64> {
    if per_instance.is_empty() {
        return Err(Error::EmptyInput("no counterfactuals to evaluate"));
    }
    let flipped = per_instance.iter().filter(|m| m.valid).count();
    Ok(flipped as f64 / per_instance.len() as f64)
}

/// Scores each counterfactual and aggregates; `runtime_seconds` is passed
/// through unchanged.
pub fn evaluate(cfs: &[Counterfactual], runtime_seconds: f64) -> Result<EvaluationReport> {
    let per_instance = cfs
        .iter()
        .enumerate()
        .map(|(i, cf)| {
            InstanceMetrics::compute(&cf.original, &cf.perturbed, cf.valid).map_err(|e| e.at_index(i))
        })
        .collect::<Result<Vec<_>>>()?;
    evaluate_instances(per_instance, runtime_seconds)
}

pub fn evaluate_instances(
    per_instance: Vec<InstanceMetrics>,
    runtime_seconds: f64,
) -> Result<EvaluationReport> {
    let flip_rate = flip_rate(&per_instance)?;
    let aggregates =
        Aggregates::of(&per_instance).ok_or(Error::EmptyInput("no counterfactuals to evaluate"))?;
    Ok(EvaluationReport {
        per_instance,
        flip_rate,
        runtime_seconds,
        aggregates,
    })
}
