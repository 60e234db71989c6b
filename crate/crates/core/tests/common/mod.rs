#![allow(dead_code)]

use std::path::PathBuf;

use motifcf_core::{load_ucr_split, Class, LabeledDataset, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (name, file extension, m, n_train, n_test) as published for the benchmark.
pub const TABLE: [(&str, &str, usize, usize, usize); 5] = [
    ("ECG200", "tsv", 96, 100, 100),
    ("Coffee", "tsv", 286, 28, 28),
    ("GunPoint", "txt", 150, 50, 150),
    ("BeetleFly", "tsv", 470, 20, 20),
    ("BirdChicken", "tsv", 512, 20, 20),
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr")
}

pub fn paths(name: &str) -> (PathBuf, PathBuf) {
    let ext = TABLE
        .iter()
        .find(|t| t.0 == name)
        .map(|t| t.1)
        .expect("known dataset");
    let dir = data_dir();
    (
        dir.join(format!("{name}_TRAIN.{ext}")),
        dir.join(format!("{name}_TEST.{ext}")),
    )
}

pub fn load(name: &str) -> (LabeledDataset, LabeledDataset) {
    let (train, test) = paths(name);
    load_ucr_split(&train, &test, None).expect("vendored dataset loads")
}

pub const PLANT_LEN: usize = 12;

/// `n` series of length `m` with uniform noise in [-0.5, 0.5). Even indices
/// are class 0 and carry a block of 5.0 of length [`PLANT_LEN`] at a random
/// offset; odd indices are class 1 and never leave the noise band.
pub fn planted(n: usize, m: usize, seed: u64) -> (LabeledDataset, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut series = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(-0.5..0.5)).collect();
        if i % 2 == 0 {
            let at = rng.gen_range(0..=m - PLANT_LEN);
            v[at..at + PLANT_LEN].iter_mut().for_each(|x| *x = 5.0);
            offsets.push(at);
            labels.push(Class::Zero);
        } else {
            offsets.push(usize::MAX);
            labels.push(Class::One);
        }
        series.push(TimeSeries::new(v).unwrap());
    }
    (LabeledDataset::new("planted", series, labels).unwrap(), offsets)
}

/// Pure noise with random labels (both classes forced present).
pub fn noise(n: usize, m: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let series = (0..n)
        .map(|_| TimeSeries::new((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap())
        .collect();
    let mut labels: Vec<Class> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Class::One
            } else {
                Class::Zero
            }
        })
        .collect();
    labels[0] = Class::Zero;
    labels[1] = Class::One;
    LabeledDataset::new("noise", series, labels).unwrap()
}

/// Plain nested-loop 1-NN, strict improvement so the lowest index wins ties.
pub fn nn_oracle(train: &LabeledDataset, q: &[f64]) -> Class {
    let mut best = f64::INFINITY;
    let mut label = train.labels()[0];
    for (s, &l) in train.series().iter().zip(train.labels()) {
        let mut d = 0.0;
        for j in 0..q.len() {
            d += (s[j] - q[j]) * (s[j] - q[j]);
        }
        if d < best {
            best = d;
            label = l;
        }
    }
    label
}
