use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// Shortest subsequence length ever considered.
pub const MIN_MOTIF_LEN: usize = 3;

/// Window lengths used by default, as fractions of the series length.
pub const DEFAULT_FRACTIONS: [f64; 3] = [0.3, 0.5, 0.7];

/// A window of one training series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate<'a> {
    pub source_series: usize,
    pub start: usize,
    pub values: &'a [f64],
}

impl Candidate<'_> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Exclusive end index.
    pub fn end(&self) -> usize {
        self.start + self.values.len()
    }
}

pub fn validate_fractions(fractions: &[f64]) -> Result<()> {
    if fractions.is_empty() {
        return Err(Error::InvalidArgument("no length fractions given".into()));
    }
    if let Some(f) = fractions.iter().find(|f| !(**f > 0.0 && **f < 1.0)) {
        return Err(Error::InvalidArgument(format!(
            "length fraction {f} is outside (0, 1)"
        )));
    }
    Ok(())
}

/// Distinct window lengths `max(3, floor(fraction * m))`, in the order the
/// fractions are given. Fractions whose length would not be shorter than the
/// series are skipped with a warning.
pub fn candidate_lengths(m: usize, fractions: &[f64]) -> Result<Vec<usize>> {
    validate_fractions(fractions)?;
    let mut lengths = Vec::new();
    for &f in fractions {
        let l = ((f * m as f64).floor() as usize).max(MIN_MOTIF_LEN);
        if l >= m {
            log::warn!("length fraction {f} gives window {l} for series of length {m}; skipped");
            continue;
        }
        if !lengths.contains(&l) {
            lengths.push(l);
        }
    }
    Ok(lengths)
}

/// Every window of every training series at each candidate length: series
/// in index order, then lengths, then start offsets.
pub fn generate_candidates<'a>(
    ds: &'a LabeledDataset,
    fractions: &[f64],
) -> Result<impl Iterator<Item = Candidate<'a>> + 'a> {
    let lengths = candidate_lengths(ds.series_len(), fractions)?;
    Ok(ds.series().iter().enumerate().flat_map(move |(i, ts)| {
        let values = ts.values();
        lengths.clone().into_iter().flat_map(move |l| {
            (0..=values.len() - l).map(move |start| Candidate {
                source_series: i,
                start,
                values: &values[start..start + l],
            })
        })
    }))
}

/// `n * sum(m - l + 1)` over the candidate lengths.
pub fn candidate_count(n: usize, m: usize, lengths: &[usize]) -> usize {
    n * lengths.iter().map(|&l| m - l + 1).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Class, TimeSeries};

    fn ds(n: usize, m: usize) -> LabeledDataset {
        let series = (0..n)
            .map(|i| TimeSeries::new((0..m).map(|j| (i * 100 + j) as f64).collect()).unwrap())
            .collect();
        let labels = (0..n)
            .map(|i| if i % 2 == 0 { Class::Zero } else { Class::One })
            .collect();
        LabeledDataset::new("c", series, labels).unwrap()
    }

    #[test]
    fn ecg_lengths() {
        assert_eq!(
            candidate_lengths(96, &DEFAULT_FRACTIONS).unwrap(),
            vec![28, 48, 67]
        );
        assert_eq!(96 - 28 + 1, 69);
    }

    #[test]
    fn half_length_windows_are_slices() {
        let d = ds(2, 10);
        let c: Vec<_> = generate_candidates(&d, &[0.5]).unwrap().collect();
        assert_eq!(c.len(), 12);
        for cand in &c[..6] {
            assert_eq!(cand.source_series, 0);
            assert_eq!(cand.len(), 5);
            assert_eq!(cand.values, &d.series()[0][cand.start..cand.start + 5]);
        }
        assert_eq!(c[5].start, 5);
        assert_eq!(c[6].source_series, 1);
    }

    #[test]
    fn default_fractions_on_short_series() {
        let d = ds(2, 10);
        let lengths = candidate_lengths(10, &DEFAULT_FRACTIONS).unwrap();
        assert_eq!(lengths, vec![3, 5, 7]);
        // enumerate by brute force: every (series, length, start) triple
        let mut expected = 0;
        for _ in 0..2 {
            for l in [3, 5, 7] {
                for start in 0..10 {
                    if start + l <= 10 {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(expected, 36);
        assert_eq!(generate_candidates(&d, &DEFAULT_FRACTIONS).unwrap().count(), 36);
        assert_eq!(candidate_count(2, 10, &lengths), 36);
    }

    #[test]
    fn duplicate_and_oversized_lengths() {
        // 0.1*10 and 0.2*10 both clamp to 3; 0.95*10 floors to 9 (< 10) and is kept
        assert_eq!(candidate_lengths(10, &[0.1, 0.2, 0.95]).unwrap(), vec![3, 9]);
        // every fraction clamps to 3 = m: all skipped
        assert!(candidate_lengths(3, &[0.5]).unwrap().is_empty());
    }

    #[test]
    fn fractions_validated() {
        assert!(candidate_lengths(10, &[]).is_err());
        assert!(candidate_lengths(10, &[0.0]).is_err());
        assert!(candidate_lengths(10, &[1.0]).is_err());
        assert!(candidate_lengths(10, &[f64::NAN]).is_err());
    }
}
