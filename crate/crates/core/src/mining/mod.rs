//! Discriminative motif mining.
//!
//! Every window of every training series at a few fixed lengths is scored
//! by how well its distance profile (the minimum sliding-window distance to
//! each training series) separates the two classes, measured as information
//! gain. The best window whose source series belongs to class `c` becomes the
//! motif for class `c`.
//!
//! Profiles can be abandoned part-way once an optimistic bound on their gain
//! drops below the best gain already found for the same class. The bound is
//! exact in the sense of never underestimating, so the selected motifs do not
//! depend on whether pruning is enabled.

mod candidates;
mod quality;

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{Class, LabeledDataset};
use crate::distance::min_dist_from;
use crate::error::{Error, Result};

pub use crate::distance::{min_dist_to_series, subseq_dist};
pub use candidates::{
    candidate_count, candidate_lengths, generate_candidates, validate_fractions, Candidate,
    DEFAULT_FRACTIONS, MIN_MOTIF_LEN,
};
pub use quality::{info_gain, Split};

use quality::{best_split_sorted, optimistic_bound, Counts};

/// Slack under which a bound must fall before a profile is abandoned, so that
/// rounding in the bound can never evict a candidate that ties the best.
const ABANDON_SLACK: f64 = 1e-12;

/// Minimum distance from a candidate to every training series, index-aligned.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceProfile(Vec<f64>);

impl DistanceProfile {
    pub fn distances(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

pub fn distance_profile(candidate: &Candidate<'_>, ds: &LabeledDataset) -> Result<DistanceProfile> {
    if candidate.len() > ds.series_len() {
        return Err(Error::dimension(ds.series_len(), candidate.len()));
    }
    if candidate.is_empty() {
        return Err(Error::EmptyInput("candidate"));
    }
    Ok(DistanceProfile(
        ds.series()
            .iter()
            .map(|t| min_dist_from(candidate.values, t, candidate.start))
            .collect(),
    ))
}

/// Outcome of scoring one candidate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Assessment {
    /// Information gain of the full profile, or 0 when abandoned (a lower
    /// bound on the true gain).
    pub gain: f64,
    /// Split threshold; `None` when abandoned.
    pub threshold: Option<f64>,
    pub abandoned: bool,
    /// Number of profile entries computed.
    pub series_evaluated: usize,
}

/// Scores a candidate, abandoning once its gain provably cannot reach
/// `best_so_far`. Passing 0 disables pruning.
pub fn assess_candidate(
    candidate: &Candidate<'_>,
    ds: &LabeledDataset,
    best_so_far: f64,
) -> Result<Assessment> {
    if !(0.0..=1.0).contains(&best_so_far) {
        return Err(Error::InvalidArgument(format!(
            "best-so-far gain {best_so_far} is outside [0, 1]"
        )));
    }
    if candidate.len() > ds.series_len() || candidate.is_empty() {
        return Err(Error::dimension(ds.series_len(), candidate.len()));
    }
    Ok(assess(candidate, ds, Counts::of(ds.labels()), best_so_far))
}

fn assess(candidate: &Candidate<'_>, ds: &LabeledDataset, parent: Counts, best_so_far: f64) -> Assessment {
    let labels = ds.labels();
    let mut remaining = parent;
    let mut sorted: Vec<(f64, Class)> = Vec::with_capacity(labels.len());
    let prune = best_so_far > 0.0;
    for (i, (t, &label)) in ds.series().iter().zip(labels).enumerate() {
        let d = min_dist_from(candidate.values, t, candidate.start);
        let pos = sorted.partition_point(|&(x, _)| x <= d);
        sorted.insert(pos, (d, label));
        remaining.0[label.index()] -= 1;
        if prune
            && i + 1 < labels.len()
            && optimistic_bound(&sorted, parent, remaining) < best_so_far - ABANDON_SLACK
        {
            return Assessment {
                gain: 0.0,
                threshold: None,
                abandoned: true,
                series_evaluated: i + 1,
            };
        }
    }
    let split = best_split_sorted(&sorted, parent);
    Assessment {
        gain: split.gain,
        threshold: Some(split.threshold),
        abandoned: false,
        series_evaluated: labels.len(),
    }
}

/// A mined motif: a window `[start_idx, end_idx)` of training series
/// `source_series`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotifDescriptor {
    pub class_id: Class,
    pub source_series: usize,
    pub start_idx: usize,
    pub end_idx: usize,
    /// Information gain in bits.
    pub quality: f64,
    pub values: Vec<f64>,
}

impl MotifDescriptor {
    pub fn len(&self) -> usize {
        self.end_idx - self.start_idx
    }

    pub fn is_empty(&self) -> bool {
        self.start_idx == self.end_idx
    }
}

/// One motif per class. Serialized as a two-element array ordered by class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<MotifDescriptor>", into = "Vec<MotifDescriptor>")]
pub struct MotifPair {
    class0: MotifDescriptor,
    class1: MotifDescriptor,
}

impl MotifPair {
    pub fn new(class0: MotifDescriptor, class1: MotifDescriptor) -> Result<Self> {
        if class0.class_id != Class::Zero || class1.class_id != Class::One {
            return Err(Error::InvalidArgument(
                "motif pair must hold one motif per class".into(),
            ));
        }
        Ok(MotifPair { class0, class1 })
    }

    pub fn for_class(&self, c: Class) -> &MotifDescriptor {
        match c {
            Class::Zero => &self.class0,
            Class::One => &self.class1,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &MotifDescriptor> {
        [&self.class0, &self.class1].into_iter()
    }
}

impl TryFrom<Vec<MotifDescriptor>> for MotifPair {
    type Error = String;

    fn try_from(v: Vec<MotifDescriptor>) -> Result<Self, String> {
        let [a, b]: [MotifDescriptor; 2] = v
            .try_into()
            .map_err(|v: Vec<_>| format!("expected exactly 2 motifs, found {}", v.len()))?;
        let (a, b) = if a.class_id <= b.class_id { (a, b) } else { (b, a) };
        MotifPair::new(a, b).map_err(|e| e.to_string())
    }
}

impl From<MotifPair> for Vec<MotifDescriptor> {
    fn from(p: MotifPair) -> Self {
        vec![p.class0, p.class1]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningConfig {
    pub fractions: Vec<f64>,
    pub early_abandon: bool,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            fractions: DEFAULT_FRACTIONS.to_vec(),
            early_abandon: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MiningStats {
    pub lengths: Vec<usize>,
    pub candidates: usize,
    pub abandoned: usize,
    /// Total profile entries computed across all candidates.
    pub distances_computed: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningOutcome {
    pub motifs: MotifPair,
    pub stats: MiningStats,
}

/// Ordering on fully scored candidates: higher gain, then shorter, then lower
/// source index, then lower start.
fn outranks(a: (&Candidate<'_>, f64), b: (&Candidate<'_>, f64)) -> bool {
    let (ca, ga) = a;
    let (cb, gb) = b;
    if ga != gb {
        return ga > gb;
    }
    (ca.len(), ca.source_series, ca.start) < (cb.len(), cb.source_series, cb.start)
}

struct SharedBound(AtomicU64);

impl SharedBound {
    fn new() -> Self {
        SharedBound(AtomicU64::new(0f64.to_bits()))
    }

    fn get(&self) -> f64 {
        f64::from_bits(self.0.load(AtomicOrdering::Relaxed))
    }

    fn raise(&self, gain: f64) {
        let _ = self
            .0
            .fetch_update(AtomicOrdering::Relaxed, AtomicOrdering::Relaxed, |cur| {
                (gain > f64::from_bits(cur)).then(|| gain.to_bits())
            });
    }
}

/// Scores every candidate and returns the best motif per class.
pub fn mine_motifs(ds: &LabeledDataset, config: &MiningConfig) -> Result<MiningOutcome> {
    let m = ds.series_len();
    if m <= MIN_MOTIF_LEN {
        return Err(Error::InvalidDataset(format!(
            "series length {m} is too short to mine windows of length {MIN_MOTIF_LEN}"
        )));
    }
    let lengths = candidate_lengths(m, &config.fractions)?;
    if lengths.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no length fraction yields a window shorter than the series length {m}"
        )));
    }
    let candidates: Vec<Candidate<'_>> = generate_candidates(ds, &config.fractions)?.collect();
    let parent = Counts::of(ds.labels());
    let labels = ds.labels();
    let bounds = [SharedBound::new(), SharedBound::new()];
    let abandoned = AtomicUsize::new(0);
    let computed = AtomicUsize::new(0);

    let scored: Vec<Option<f64>> = candidates
        .par_iter()
        .map(|c| {
            let class = labels[c.source_series].index();
            let best = if config.early_abandon {
                bounds[class].get()
            } else {
                0.0
            };
            let a = assess(c, ds, parent, best);
            computed.fetch_add(a.series_evaluated, AtomicOrdering::Relaxed);
            if a.abandoned {
                abandoned.fetch_add(1, AtomicOrdering::Relaxed);
                None
            } else {
                bounds[class].raise(a.gain);
                Some(a.gain)
            }
        })
        .collect();

    let mut best: [Option<(usize, f64)>; 2] = [None, None];
    for (k, gain) in scored.iter().enumerate() {
        let Some(gain) = *gain else { continue };
        let c = &candidates[k];
        let slot = &mut best[labels[c.source_series].index()];
        let better = match *slot {
            None => true,
            Some((j, g)) => outranks((c, gain), (&candidates[j], g)),
        };
        if better {
            *slot = Some((k, gain));
        }
    }

    let describe = |class: Class| -> Result<MotifDescriptor> {
        let (k, gain) = best[class.index()]
            .ok_or_else(|| Error::Internal(format!("no scored candidate for class {class}")))?;
        let c = &candidates[k];
        Ok(MotifDescriptor {
            class_id: class,
            source_series: c.source_series,
            start_idx: c.start,
            end_idx: c.end(),
            quality: gain,
            values: c.values.to_vec(),
        })
    };
    let motifs = MotifPair::new(describe(Class::Zero)?, describe(Class::One)?)?;
    Ok(MiningOutcome {
        motifs,
        stats: MiningStats {
            lengths,
            candidates: candidates.len(),
            abandoned: abandoned.into_inner(),
            distances_computed: computed.into_inner(),
        },
    })
}
