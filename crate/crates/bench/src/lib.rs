//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use motifcf_core::{load_ucr_split, Class, LabeledDataset, TimeSeries};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr")
}

/// Train and test splits of a vendored `.tsv` dataset.
pub fn ucr(name: &str) -> (LabeledDataset, LabeledDataset) {
    let dir = data_dir();
    load_ucr_split(
        dir.join(format!("{name}_TRAIN.tsv")),
        dir.join(format!("{name}_TEST.tsv")),
        None,
    )
    .expect("vendored dataset")
}

/// Deterministic two-class set: class 0 is a slow sine, class 1 adds a bump
/// whose position drifts with the series index.
pub fn waves(n: usize, m: usize) -> LabeledDataset {
    let series = (0..n)
        .map(|i| {
            let phase = i as f64 * 0.37;
            let bump = (i * 7) % (m / 2);
            TimeSeries::new(
                (0..m)
                    .map(|j| {
                        let base = (j as f64 * 0.2 + phase).sin();
                        let in_bump = i % 2 == 1 && (bump..bump + m / 8).contains(&j);
                        base + if in_bump { 2.0 } else { 0.0 }
                    })
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    let labels = (0..n)
        .map(|i| if i % 2 == 0 { Class::Zero } else { Class::One })
        .collect();
    LabeledDataset::new("waves", series, labels).unwrap()
}
