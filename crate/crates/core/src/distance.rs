//! Squared Euclidean distance kernels.
//!
//! Every distance in the crate goes through [`sq_dist_bounded`], so a value
//! computed with a pruning bound is bit-identical to the same value computed
//! without one. Accumulation uses four interleaved lanes; the reduction order
//! is fixed and does not depend on the bound.

use crate::error::{Error, Result};

const LANES: usize = 4;
const CHECK_EVERY: usize = 16;

/// Squared Euclidean distance, abandoned as soon as a partial sum reaches
/// `bound`. Returns `None` when abandoned, which implies the full distance is
/// `>= bound`. Slices must have equal length.
#[inline]
pub(crate) fn sq_dist_bounded(a: &[f64], b: &[f64], bound: f64) -> Option<f64> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; LANES];
    let mut blocks_a = a.chunks_exact(CHECK_EVERY);
    let mut blocks_b = b.chunks_exact(CHECK_EVERY);
    for (xa, xb) in (&mut blocks_a).zip(&mut blocks_b) {
        for (qa, qb) in xa.chunks_exact(LANES).zip(xb.chunks_exact(LANES)) {
            for k in 0..LANES {
                let d = qa[k] - qb[k];
                acc[k] += d * d;
            }
        }
        if (acc[0] + acc[1]) + (acc[2] + acc[3]) >= bound {
            return None;
        }
    }
    let (ra, rb) = (blocks_a.remainder(), blocks_b.remainder());
    let mut qa = ra.chunks_exact(LANES);
    let mut qb = rb.chunks_exact(LANES);
    for (x, y) in (&mut qa).zip(&mut qb) {
        for k in 0..LANES {
            let d = x[k] - y[k];
            acc[k] += d * d;
        }
    }
    let mut total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (x, y) in qa.remainder().iter().zip(qb.remainder()) {
        let d = x - y;
        total += d * d;
    }
    if total >= bound {
        None
    } else {
        Some(total)
    }
}

#[inline]
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist_bounded(a, b, f64::INFINITY).unwrap_or(f64::INFINITY)
}

/// Sum of squared differences between two equal-length subsequences, with
/// no length normalization.
pub fn subseq_dist(s: &[f64], r: &[f64]) -> Result<f64> {
    if s.len() != r.len() {
        return Err(Error::dimension(s.len(), r.len()));
    }
    Ok(sq_dist(s, r))
}

/// Smallest [`subseq_dist`] between `s` and any same-length window of `t`.
pub fn min_dist_to_series(s: &[f64], t: &[f64]) -> Result<f64> {
    if s.len() > t.len() {
        return Err(Error::Dimension {
            expected: t.len(),
            found: s.len(),
            index: None,
        });
    }
    if s.is_empty() {
        return Ok(0.0);
    }
    Ok(min_dist_from(s, t, 0))
}

/// Minimum over all windows, scanning the window at `first` before the rest.
/// The result does not depend on `first`; a well-placed first window only
/// tightens the abandon bound sooner.
pub(crate) fn min_dist_from(s: &[f64], t: &[f64], first: usize) -> f64 {
    let l = s.len();
    let windows = t.len() - l + 1;
    let first = first.min(windows - 1);
    let mut best = sq_dist(s, &t[first..first + l]);
    for start in (0..windows).filter(|&w| w != first) {
        if best == 0.0 {
            break;
        }
        if let Some(d) = sq_dist_bounded(s, &t[start..start + l], best) {
            best = d;
        }
    }
    best
}
