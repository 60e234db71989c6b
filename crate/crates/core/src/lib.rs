//! Class-discriminative motif mining and motif-guided counterfactual
//! explanations for binary univariate time-series classifiers.
//!
//! The pipeline mines, from a labeled training set, the subsequence that best
//! separates each class (by information gain of its sliding-window distance
//! profile), then explains a black-box prediction by splicing the motif of
//! the opposite class into the query at the motif's own position.
//!
//! ```no_run
//! use motifcf_core::{run_pipeline, RunConfig};
//!
//! let cfg = RunConfig::new("data/ucr/ECG200_TRAIN.tsv", "data/ucr/ECG200_TEST.tsv", "out");
//! let out = run_pipeline(&cfg)?;
//! println!("flip rate {}", out.report.flip_rate);
//! # Ok::<(), motifcf_core::Error>(())
//! ```

pub mod artifacts;
pub mod cf;
pub mod classifier;
pub mod dataset;
mod distance;
pub mod error;
pub mod metrics;
pub mod mining;
pub mod pipeline;

pub use artifacts::{CfFile, CfRecord, ReportFile, SummaryRow, TableFormat};
pub use cf::{
    generate_cf, generate_cf_batch, generate_nun_baseline, generate_nun_batch, CfBatch, Counterfactual,
    Method,
};
pub use classifier::{predict_batch, train_1nn, BlackBoxClassifier, OneNnClassifier};
pub use dataset::{load_ucr, load_ucr_split, Class, LabelMap, LabeledDataset, TimeSeries};
pub use error::{Error, ErrorKind, Result, Stage};
pub use metrics::{count_segments, evaluate, proximity, sparsity, EvaluationReport, InstanceMetrics};
pub use mining::{
    assess_candidate, distance_profile, info_gain, min_dist_to_series, mine_motifs, subseq_dist,
    MiningConfig, MotifDescriptor, MotifPair,
};
pub use pipeline::{run_pipeline, ClassifierKind, RunConfig};
