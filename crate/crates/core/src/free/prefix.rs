use std::collections::BTreeSet;
use std::io::Write;

use crate::error::Result;
use crate::free::{at_most_log2, cancel, require_free};
use crate::walk::{csv_err, WalkTrace};

pub const DEFAULT_THRESHOLD: u64 = 64;

/// Trie over reduced words with a cursor that follows a walk: each step
/// pops the cancelled letters and descends through the rest.
#[derive(Debug, Clone)]
pub struct PrefixTrie {
    rank: usize,
    // 2d child slots per node, 0 = absent (the root is never a child)
    children: Vec<u32>,
    depth_counts: Vec<u64>,
    cursor: Vec<u32>,
    word: Vec<i32>,
}

impl PrefixTrie {
    pub fn new(rank: usize) -> Self {
        PrefixTrie {
            rank,
            children: vec![0; 2 * rank],
            depth_counts: Vec::new(),
            cursor: vec![0],
            word: Vec::new(),
        }
    }

    fn slot(&self, letter: i32) -> usize {
        if letter > 0 {
            letter as usize - 1
        } else {
            self.rank + (-letter) as usize - 1
        }
    }

    /// Moves the cursor from the current word `w` to the reduced form of `w * step`.
    pub fn step(&mut self, step: &[i32]) {
        let c = cancel(&self.word, step);
        let keep = self.word.len() - c;
        self.word.truncate(keep);
        self.cursor.truncate(keep + 1);
        for &l in &step[c..] {
            let node = *self.cursor.last().expect("root stays on the stack") as usize;
            let idx = node * 2 * self.rank + self.slot(l);
            let child = match self.children[idx] {
                0 => {
                    let id = (self.children.len() / (2 * self.rank)) as u32;
                    self.children
                        .extend(std::iter::repeat(0).take(2 * self.rank));
                    self.children[idx] = id;
                    let depth = self.word.len();
                    if self.depth_counts.len() <= depth {
                        self.depth_counts.push(0);
                    }
                    self.depth_counts[depth] += 1;
                    id
                }
                id => id,
            };
            self.cursor.push(child);
            self.word.push(l);
        }
    }

    /// `V_j` for `j = 1..=max_depth`, index `j - 1`.
    pub fn depth_counts(&self) -> &[u64] {
        &self.depth_counts
    }

    pub fn current_word(&self) -> &[i32] {
        &self.word
    }
}

/// Distinct prefix counts `V_j` of the positions `X_1..X_N` of a free-group walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixStats {
    pub rank: usize,
    pub trace_len: usize,
    /// `counts[j - 1] = V_j`.
    pub counts: Vec<u64>,
    pub j0: u64,
}

impl PrefixStats {
    pub fn max_depth(&self) -> usize {
        self.counts.len()
    }

    /// `V_j`, zero beyond the deepest position.
    pub fn v(&self, j: usize) -> u64 {
        if j == 0 {
            return 1;
        }
        self.counts.get(j - 1).copied().unwrap_or(0)
    }

    pub fn with_threshold(mut self, j0: u64) -> Self {
        self.j0 = j0;
        self
    }

    /// CSV rows `j,v_j,log2_j`.
    pub fn write_csv<W: Write>(&self, mut out: W, extra_metadata: &[String]) -> Result<()> {
        for line in extra_metadata {
            writeln!(out, "# {line}")?;
        }
        writeln!(
            out,
            "# prefix_counts d={} trace_len={} j0={}",
            self.rank, self.trace_len, self.j0
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["j", "v_j", "log2_j"]).map_err(csv_err)?;
        for (i, v) in self.counts.iter().enumerate() {
            let j = i + 1;
            w.write_record([
                j.to_string(),
                v.to_string(),
                format!("{:.6}", (j as f64).log2()),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn prefix_counts(trace: &WalkTrace) -> Result<PrefixStats> {
    let rank = require_free(trace.descriptor())?;
    let mut trie = PrefixTrie::new(rank);
    for z in trace.increments() {
        trie.step(z.as_word().expect("free-group increment"));
    }
    Ok(PrefixStats {
        rank,
        trace_len: trace.len(),
        counts: trie.depth_counts().to_vec(),
        j0: DEFAULT_THRESHOLD,
    })
}

/// Quadratic recount of `V_j` by collecting every prefix of every position.
pub fn recount_prefixes(trace: &WalkTrace) -> Vec<u64> {
    let mut by_depth: Vec<BTreeSet<&[i32]>> = Vec::new();
    for x in trace.positions() {
        let w = x.as_word().expect("free-group position");
        for j in 1..=w.len() {
            if by_depth.len() < j {
                by_depth.push(BTreeSet::new());
            }
            by_depth[j - 1].insert(&w[..j]);
        }
    }
    by_depth.iter().map(|s| s.len() as u64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogBoundCheck {
    pub holds: bool,
    pub first_violation: Option<u64>,
}

/// Whether `V_j <= log2 j` for every `j0 < j <= max_depth`.
pub fn log_bound_check(stats: &PrefixStats, j0: u64) -> LogBoundCheck {
    let first_violation = stats
        .counts
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as u64 + 1, v))
        .find(|&(j, v)| j > j0 && !at_most_log2(v, j))
        .map(|(j, _)| j);
    LogBoundCheck {
        holds: first_violation.is_none(),
        first_violation,
    }
}

/// Smallest `j0` for which [`log_bound_check`] passes: the deepest violation.
pub fn smallest_passing_threshold(stats: &PrefixStats) -> u64 {
    stats
        .counts
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, &v)| !at_most_log2(v, i as u64 + 1))
        .map_or(0, |(i, _)| i as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupDescriptor, GroupElement};
    use crate::walk::{generate_walk, SymmetricMeasure};

    fn trace_of(rank: usize, steps: &[&[i32]]) -> WalkTrace {
        let inc = steps
            .iter()
            .map(|s| GroupElement::free(rank, s).unwrap())
            .collect();
        WalkTrace::from_increments(GroupDescriptor::Free(rank), 0, inc).unwrap()
    }

    fn stats(counts: Vec<u64>) -> PrefixStats {
        PrefixStats {
            rank: 2,
            trace_len: 0,
            counts,
            j0: 1,
        }
    }

    #[test]
    fn small_traces() {
        let s = prefix_counts(&trace_of(2, &[&[1], &[2]])).unwrap();
        assert_eq!(s.counts, vec![1, 1]);
        let s = prefix_counts(&trace_of(2, &[&[1], &[-1], &[2]])).unwrap();
        assert_eq!(s.counts, vec![2]);
        let s = prefix_counts(&trace_of(2, &[&[1, 2], &[-2, -1, -2]])).unwrap();
        assert_eq!(s.counts, vec![2, 1]);
    }

    #[test]
    fn wrong_group() {
        let m = SymmetricMeasure::uniform_standard(GroupDescriptor::ZPower(1));
        assert!(prefix_counts(&generate_walk(&m, 5, 1)).is_err());
    }

    #[test]
    fn bound_checks() {
        let s = stats(vec![5, 1]);
        assert_eq!(
            log_bound_check(&s, 1),
            LogBoundCheck {
                holds: true,
                first_violation: None
            }
        );
        let s = stats(vec![1, 1, 1, 1, 1, 1, 1, 4]);
        assert_eq!(
            log_bound_check(&s, 2),
            LogBoundCheck {
                holds: false,
                first_violation: Some(8)
            }
        );
        assert_eq!(smallest_passing_threshold(&s), 8);
        assert_eq!(smallest_passing_threshold(&stats(vec![3, 1, 1])), 1);
    }

    #[test]
    fn trie_matches_recount() {
        for d in [2, 3, 5] {
            let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Free(d));
            for seed in 0..20 {
                let t = generate_walk(&m, 1000, seed);
                let s = prefix_counts(&t).unwrap();
                assert_eq!(s.counts, recount_prefixes(&t), "d={d} seed={seed}");
                assert_eq!(
                    s.max_depth(),
                    t.positions()
                        .iter()
                        .map(|x| x.as_word().unwrap().len())
                        .max()
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn count_invariants() {
        let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Free(3));
        let t = generate_walk(&m, 3000, 9);
        let s = prefix_counts(&t).unwrap();
        let mut sphere = 6u64;
        for j in 1..=s.max_depth() {
            let v = s.v(j);
            assert!(v >= 1 && v <= sphere.min(t.len() as u64));
            assert!(s.v(j + 1) <= 5 * v);
            sphere = sphere.saturating_mul(5);
        }
    }

    #[test]
    fn multi_letter_steps_match_recount() {
        let d = GroupDescriptor::Free(2);
        let atoms = vec![
            (
                GroupElement::free(2, &[1, 2]).unwrap(),
                crate::walk::Weight::new(1, 4),
            ),
            (
                GroupElement::free(2, &[-2, -1]).unwrap(),
                crate::walk::Weight::new(1, 4),
            ),
            (
                GroupElement::free(2, &[2]).unwrap(),
                crate::walk::Weight::new(1, 4),
            ),
            (
                GroupElement::free(2, &[-2]).unwrap(),
                crate::walk::Weight::new(1, 4),
            ),
        ];
        let m = SymmetricMeasure::new(d, atoms).unwrap();
        let t = generate_walk(&m, 800, 3);
        assert_eq!(prefix_counts(&t).unwrap().counts, recount_prefixes(&t));
    }
}
