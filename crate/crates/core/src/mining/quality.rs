//! Information gain of a distance profile, and the optimistic bound used to
//! abandon a profile before it is complete.

use crate::dataset::Class;
use crate::error::{Error, Result};

/// Best binary split of a distance profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Split {
    /// Information gain in bits.
    pub gain: f64,
    /// Distances strictly below the threshold fall on the left.
    pub threshold: f64,
}

/// Per-class tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Counts(pub [usize; 2]);

impl Counts {
    pub(crate) fn of(labels: &[Class]) -> Self {
        let mut c = [0; 2];
        for l in labels {
            c[l.index()] += 1;
        }
        Counts(c)
    }

    fn total(self) -> usize {
        self.0[0] + self.0[1]
    }

    fn entropy(self) -> f64 {
        let n = self.total();
        if n == 0 {
            return 0.0;
        }
        let n = n as f64;
        self.0
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum()
    }
}

/// Gain of splitting `parent` into `left` and `parent - left`.
pub(crate) fn split_gain(parent: Counts, left: Counts) -> f64 {
    let right = Counts([parent.0[0] - left.0[0], parent.0[1] - left.0[1]]);
    let n = parent.total() as f64;
    let weighted = (left.total() as f64 / n) * left.entropy() + (right.total() as f64 / n) * right.entropy();
    (parent.entropy() - weighted).clamp(0.0, 1.0)
}

/// Maximum information gain over thresholds placed at midpoints between
/// consecutive distinct sorted distances. Ties keep the smallest threshold.
/// A profile with a single distinct value has gain 0 and that value as its
/// threshold.
pub fn info_gain(distances: &[f64], labels: &[Class]) -> Result<Split> {
    if distances.len() != labels.len() {
        return Err(Error::dimension(labels.len(), distances.len()));
    }
    if distances.is_empty() {
        return Err(Error::EmptyInput("distance profile"));
    }
    let mut order: Vec<(f64, Class)> = distances.iter().copied().zip(labels.iter().copied()).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(best_split_sorted(&order, Counts::of(labels)))
}

pub(crate) fn best_split_sorted(sorted: &[(f64, Class)], parent: Counts) -> Split {
    let mut best = Split {
        gain: f64::NEG_INFINITY,
        threshold: sorted[0].0,
    };
    let mut left = Counts::default();
    for k in 1..sorted.len() {
        left.0[sorted[k - 1].1.index()] += 1;
        let (lo, hi) = (sorted[k - 1].0, sorted[k].0);
        if lo == hi {
            continue;
        }
        let gain = split_gain(parent, left);
        if gain > best.gain {
            best = Split {
                gain,
                threshold: (lo + hi) / 2.0,
            };
        }
    }
    if best.gain == f64::NEG_INFINITY {
        best.gain = 0.0;
    }
    best
}

/// Upper bound on the gain any completion of a partial profile can reach.
///
/// `sorted` holds the distances computed so far; `parent` counts every
/// series, including the `remaining` ones not yet measured. Mutual
/// information is convex in the per-class share sent left, so over all
/// placements of the unmeasured series the maximum sits at a corner: each
/// class's remainder goes entirely left or entirely right. The bound takes
/// the best corner at every cut of the measured distances.
pub(crate) fn optimistic_bound(sorted: &[(f64, Class)], parent: Counts, remaining: Counts) -> f64 {
    let corners = [
        [0, 0],
        [remaining.0[0], 0],
        [0, remaining.0[1]],
        [remaining.0[0], remaining.0[1]],
    ];
    let mut bound = 0.0f64;
    let mut left = Counts::default();
    for k in 0..=sorted.len() {
        let cut_allowed = k == 0 || k == sorted.len() || sorted[k - 1].0 != sorted[k].0;
        if cut_allowed {
            for extra in corners {
                let l = Counts([left.0[0] + extra[0], left.0[1] + extra[1]]);
                if l.total() == 0 || l.total() == parent.total() {
                    continue;
                }
                bound = bound.max(split_gain(parent, l));
            }
        }
        if k < sorted.len() {
            left.0[sorted[k].1.index()] += 1;
        }
    }
    bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Class::{One, Zero};

    /// Independent oracle: try every candidate threshold and recount from scratch.
    fn brute_force(d: &[f64], labels: &[Class]) -> (f64, f64) {
        fn h(a: f64, b: f64) -> f64 {
            let n = a + b;
            [a, b]
                .iter()
                .filter(|&&c| c > 0.0)
                .map(|&c| -(c / n) * (c / n).log2())
                .sum()
        }
        let mut sorted = d.to_vec();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        let count = |pred: &dyn Fn(usize) -> bool, c: Class| {
            (0..d.len()).filter(|&i| pred(i) && labels[i] == c).count() as f64
        };
        let n = d.len() as f64;
        let parent = h(count(&|_| true, Zero), count(&|_| true, One));
        let mut best = (f64::NEG_INFINITY, sorted[0]);
        for w in sorted.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            let (l0, l1) = (count(&|i| d[i] < t, Zero), count(&|i| d[i] < t, One));
            let (r0, r1) = (count(&|i| d[i] >= t, Zero), count(&|i| d[i] >= t, One));
            let g = parent - (l0 + l1) / n * h(l0, l1) - (r0 + r1) / n * h(r0, r1);
            if g > best.0 + 1e-12 {
                best = (g, t);
            }
        }
        if best.0 == f64::NEG_INFINITY {
            best.0 = 0.0;
        }
        (best.0.max(0.0), best.1)
    }

    #[test]
    fn perfect_balanced_split_is_one_bit() {
        let s = info_gain(&[1.0, 2.0, 9.0, 10.0], &[Zero, Zero, One, One]).unwrap();
        assert_eq!(s.gain, 1.0);
        assert_eq!(s.threshold, 5.5);
    }

    #[test]
    fn pure_labels_give_zero_gain() {
        let s = info_gain(&[1.0, 5.0, 3.0], &[One, One, One]).unwrap();
        assert_eq!(s.gain, 0.0);
        assert_eq!(s.threshold, 2.0);
    }

    #[test]
    fn single_distinct_value() {
        let s = info_gain(&[4.0, 4.0, 4.0], &[Zero, One, One]).unwrap();
        assert_eq!(
            s,
            Split {
                gain: 0.0,
                threshold: 4.0
            }
        );
    }

    #[test]
    fn interleaved_profile_matches_brute_force() {
        let d = [1.0, 3.0, 2.0, 4.0];
        let l = [Zero, One, Zero, One];
        let s = info_gain(&d, &l).unwrap();
        let (g, t) = brute_force(&d, &l);
        assert_eq!(s.threshold, t);
        assert!((s.gain - g).abs() < 1e-12);
        // sorted: 1(0) 2(0) 3(1) 4(1): perfectly separable at 2.5
        assert_eq!(s.threshold, 2.5);
        assert_eq!(s.gain, 1.0);
    }

    #[test]
    fn dimension_checked() {
        assert!(info_gain(&[1.0], &[Zero, One]).is_err());
    }

    #[test]
    fn bound_corner_cases() {
        let parent = Counts([2, 2]);
        // nothing measured yet: a perfect split is still possible
        assert_eq!(optimistic_bound(&[], parent, parent), 1.0);
        // everything measured: bound equals the exact gain
        let sorted = [(1.0, Zero), (2.0, One), (3.0, Zero), (4.0, One)];
        let exact = best_split_sorted(&sorted, parent).gain;
        assert!((optimistic_bound(&sorted, parent, Counts::default()) - exact).abs() < 1e-15);
    }

    fn labels_strategy() -> impl Strategy<Value = Vec<Class>> {
        prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { One } else { Zero }), 2..24)
    }

    proptest! {
        #[test]
        fn gain_matches_oracle(
            (d, l) in labels_strategy().prop_flat_map(|l| {
                let n = l.len();
                (prop::collection::vec((0u8..12).prop_map(f64::from), n), Just(l))
            })
        ) {
            let s = info_gain(&d, &l).unwrap();
            let (g, t) = brute_force(&d, &l);
            prop_assert!((s.gain - g).abs() < 1e-12, "gain {} vs {}", s.gain, g);
            prop_assert_eq!(s.threshold, t);
            prop_assert!((0.0..=1.0).contains(&s.gain));
        }

        #[test]
        fn bound_never_below_any_completion(
            (d, l, k) in labels_strategy().prop_flat_map(|l| {
                let n = l.len();
                (prop::collection::vec((0u8..10).prop_map(f64::from), n), Just(l), 0..=n)
            })
        ) {
            // measure the first k series; the full profile is one completion
            let parent = Counts::of(&l);
            let mut sorted: Vec<(f64, Class)> = d[..k].iter().copied().zip(l[..k].iter().copied()).collect();
            sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
            let remaining = Counts::of(&l[k..]);
            let ub = optimistic_bound(&sorted, parent, remaining);
            let exact = info_gain(&d, &l).unwrap().gain;
            prop_assert!(ub + 1e-12 >= exact, "bound {} < gain {}", ub, exact);
        }
    }
}
