//! Statistics of walks on free groups: prefix branching, the biased
//! reflected walk on word length, cancellation at word junctions and growth
//! of truncated closures.
//!
//! Logarithms are base 2 throughout.

use crate::error::{Error, Result};
use crate::group::GroupDescriptor;

mod cancellation;
mod growth;
mod prefix;
mod reflected;

pub use cancellation::{
    cancellation_experiment, random_pool, random_reduced_word, CancellationReport,
    CancellationSample, ExceedanceRow,
};
pub use growth::{sphere_growth_profile, GrowthProfile};
pub use prefix::{
    log_bound_check, prefix_counts, recount_prefixes, smallest_passing_threshold, LogBoundCheck,
    PrefixStats, PrefixTrie, DEFAULT_THRESHOLD,
};
pub use reflected::{
    reflected_biased_walk, return_probability, satisfies_return_equation, ReflectedWalkReport,
};

/// Letters of `x` annihilated when `y` is appended to it, for reduced `x`, `y`.
pub fn cancel(x: &[i32], y: &[i32]) -> usize {
    x.iter()
        .rev()
        .zip(y)
        .take_while(|(a, b)| **a == -**b)
        .count()
}

pub(crate) fn require_free(descriptor: GroupDescriptor) -> Result<usize> {
    match descriptor {
        GroupDescriptor::Free(rank) => Ok(rank),
        other => Err(Error::InvalidArgument(format!(
            "expected a free group, found {other}"
        ))),
    }
}

/// Exact test of `v <= log2 j`.
pub(crate) fn at_most_log2(v: u64, j: u64) -> bool {
    v < 64 && (1u64 << v) <= j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::reduce_word;

    pub(crate) fn all_reduced_words(d: i32, max_len: usize) -> Vec<Vec<i32>> {
        let letters: Vec<i32> = (1..=d).chain((1..=d).map(|l| -l)).collect();
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &letters {
                    if w.last() != Some(&-l) {
                        let mut v: Vec<i32> = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn inverse(x: &[i32]) -> Vec<i32> {
        x.iter().rev().map(|l| -l).collect()
    }

    #[test]
    fn cancel_examples() {
        assert_eq!(cancel(&[1, 2], &[-2, 1]), 1);
        assert_eq!(cancel(&[1, 2], &[-2, -1]), 2);
        assert_eq!(cancel(&[], &[1]), 0);
        let x = [1, -2, 3, 3];
        assert_eq!(cancel(&x, &inverse(&x)), 4);
    }

    #[test]
    fn log_comparison() {
        assert!(at_most_log2(1, 2));
        assert!(!at_most_log2(2, 3));
        assert!(at_most_log2(3, 8));
        assert!(!at_most_log2(4, 8));
        assert!(at_most_log2(0, 1));
    }

    #[test]
    fn cancel_symmetry_exhaustive() {
        let words = all_reduced_words(2, 8);
        assert_eq!(words.len(), 13121);
        let inverses: Vec<Vec<i32>> = words.iter().map(|w| inverse(w)).collect();
        for (x, xi) in words.iter().zip(&inverses) {
            for (y, yi) in words.iter().zip(&inverses) {
                let c = cancel(x, y);
                assert_eq!(c, cancel(yi, xi));
                assert!(c <= x.len().min(y.len()));
            }
        }
    }

    #[test]
    fn cancel_length_law() {
        let words = all_reduced_words(2, 5);
        for x in &words {
            for y in &words {
                let c = cancel(x, y);
                let reduced = reduce_word(x.iter().chain(y).copied());
                assert_eq!(reduced.len(), x.len() + y.len() - 2 * c);
            }
        }
    }
}
