//! The opaque classifier contract and a reference 1-NN model.

use crate::dataset::{Class, LabeledDataset, TimeSeries};
use crate::distance::sq_dist_bounded;
use crate::error::{Error, Result};

/// A trained binary classifier seen only through its predictions.
///
/// Explainers get no gradients, scores or activations. Implementations must
/// be deterministic and return a dimension error for inputs of the wrong
/// length.
pub trait BlackBoxClassifier: Send + Sync {
    fn predict(&self, series: &TimeSeries) -> Result<Class>;
}

impl<C: BlackBoxClassifier + ?Sized> BlackBoxClassifier for &C {
    fn predict(&self, series: &TimeSeries) -> Result<Class> {
        (**self).predict(series)
    }
}

impl<C: BlackBoxClassifier + ?Sized> BlackBoxClassifier for Box<C> {
    fn predict(&self, series: &TimeSeries) -> Result<Class> {
        (**self).predict(series)
    }
}

/// Applies `f` to every series in order. A length mismatch is reported with
/// the index of the offending series.
pub fn predict_batch<C>(f: &C, xs: &[TimeSeries]) -> Result<Vec<Class>>
where
    C: BlackBoxClassifier + ?Sized,
{
    xs.iter()
        .enumerate()
        .map(|(i, x)| f.predict(x).map_err(|e| e.at_index(i)))
        .collect()
}

/// One-nearest-neighbour under squared Euclidean distance. Ties go to the
/// lowest training index.
#[derive(Clone, Debug)]
pub struct OneNnClassifier {
    train: LabeledDataset,
}

impl OneNnClassifier {
    pub fn new(train: LabeledDataset) -> Self {
        OneNnClassifier { train }
    }

    pub fn training_set(&self) -> &LabeledDataset {
        &self.train
    }

    /// Index of the nearest training series.
    pub fn nearest(&self, series: &TimeSeries) -> Result<usize> {
        let m = self.train.series_len();
        if series.len() != m {
            return Err(Error::dimension(m, series.len()));
        }
        let mut best = (0, f64::INFINITY);
        for (i, t) in self.train.series().iter().enumerate() {
            // strict improvement only, so equal distances keep the lower index
            if let Some(d) = sq_dist_bounded(series, t, best.1) {
                best = (i, d);
            }
        }
        Ok(best.0)
    }
}

pub fn train_1nn(train: LabeledDataset) -> OneNnClassifier {
    OneNnClassifier::new(train)
}

impl BlackBoxClassifier for OneNnClassifier {
    fn predict(&self, series: &TimeSeries) -> Result<Class> {
        let i = self.nearest(series)?;
        Ok(self.train.labels()[i])
    }
}
