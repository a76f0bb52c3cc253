use std::io::Write;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::walk::csv_err;

/// `2d / ((2d)^2 - 2d + 1)`.
pub fn return_probability(d: u64) -> Ratio<i64> {
    let t = 2 * d as i64;
    let p = Ratio::new(t, t * t - t + 1);
    debug_assert!(satisfies_return_equation(d, p));
    p
}

/// Whether `p = 1/(2d) + (1/(2d)) ((2d-1)/(2d)) p` holds exactly.
pub fn satisfies_return_equation(d: u64, p: Ratio<i64>) -> bool {
    let t = 2 * d as i64;
    let step = Ratio::new(1, t);
    p == step + step * Ratio::new(t - 1, t) * p
}

/// Outcome of the walk on `{0, 1, 2, ...}` that steps up with probability
/// `(2d-1)/(2d)`, down with `1/(2d)`, and always up from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectedWalkReport {
    pub d: u64,
    pub steps: u64,
    pub seed: u64,
    pub final_level: u64,
    /// Visits to each level, the start included.
    pub visits: Vec<u64>,
    /// Levels `1..=settled_levels` are treated as final: the walk is at
    /// least [`SETTLE_MARGIN`] above each of them at the end.
    pub settled_levels: u64,
    /// Settled levels visited more than once.
    pub returns: u64,
    pub visit_mean: f64,
    pub visit_variance: f64,
}

impl ReflectedWalkReport {
    /// Fraction of settled levels the walk came back to after first arrival.
    pub fn return_frequency(&self) -> f64 {
        if self.settled_levels == 0 {
            return 0.0;
        }
        self.returns as f64 / self.settled_levels as f64
    }

    /// Geometric fit `p = 1 - 1/mean` for visit counts on `{1, 2, ...}`.
    pub fn fitted_return_probability(&self) -> f64 {
        if self.visit_mean == 0.0 {
            return 0.0;
        }
        1.0 - 1.0 / self.visit_mean
    }

    /// Mean visits over levels `lo..=hi`.
    pub fn mean_visits(&self, lo: usize, hi: usize) -> f64 {
        let hi = hi.min(self.visits.len().saturating_sub(1));
        if lo > hi {
            return 0.0;
        }
        let s: u64 = self.visits[lo..=hi].iter().sum();
        s as f64 / (hi + 1 - lo) as f64
    }

    /// CSV rows `level,visits`.
    pub fn write_csv<W: Write>(&self, mut out: W, extra_metadata: &[String]) -> Result<()> {
        for line in extra_metadata {
            writeln!(out, "# {line}")?;
        }
        writeln!(
            out,
            "# reflected_walk d={} steps={} seed={} final_level={} settled={} returns={}",
            self.d, self.steps, self.seed, self.final_level, self.settled_levels, self.returns
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["level", "visits"]).map_err(csv_err)?;
        for (j, v) in self.visits.iter().enumerate() {
            w.write_record([j.to_string(), v.to_string()])
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Levels within this distance of the final level are not yet settled.
pub const SETTLE_MARGIN: u64 = 64;

pub fn reflected_biased_walk(d: u64, steps: u64, seed: u64) -> ReflectedWalkReport {
    assert!(d >= 1, "rank must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = 0u64;
    let mut visits = vec![1u64];
    for _ in 0..steps {
        if level == 0 || rng.gen_range(0..2 * d) != 0 {
            level += 1;
        } else {
            level -= 1;
        }
        if visits.len() <= level as usize {
            visits.push(0);
        }
        visits[level as usize] += 1;
    }
    let settled_levels = level.saturating_sub(SETTLE_MARGIN);
    let settled = &visits[1..=settled_levels as usize];
    let returns = settled.iter().filter(|&&v| v > 1).count() as u64;
    let (visit_mean, visit_variance) = if settled.is_empty() {
        (0.0, 0.0)
    } else {
        let n = settled.len() as f64;
        let mean = settled.iter().sum::<u64>() as f64 / n;
        let var = settled
            .iter()
            .map(|&v| (v as f64 - mean).powi(2))
            .sum::<f64>()
            / n;
        (mean, var)
    };
    ReflectedWalkReport {
        d,
        steps,
        seed,
        final_level: level,
        visits,
        settled_levels,
        returns,
        visit_mean,
        visit_variance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form() {
        assert_eq!(return_probability(5), Ratio::new(10, 91));
        assert_eq!(return_probability(1), Ratio::new(2, 3));
        for d in 1..=100 {
            assert!(satisfies_return_equation(d, return_probability(d)));
        }
        assert!(!satisfies_return_equation(5, Ratio::new(1, 5)));
    }

    #[test]
    fn empty_walk() {
        let r = reflected_biased_walk(5, 0, 1);
        assert_eq!(r.visits, vec![1]);
        assert_eq!(r.settled_levels, 0);
        assert_eq!(r.return_frequency(), 0.0);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            reflected_biased_walk(3, 5000, 7),
            reflected_biased_walk(3, 5000, 7)
        );
    }

    // Independent oracle: from level j the walk steps down (then surely
    // comes back) or steps up and returns with gambler's-ruin probability
    // 1/(2d-1), so a level is revisited with probability 1/d and visited
    // d/(d-1) times on average.
    #[test]
    fn matches_gamblers_ruin() {
        for (d, seed) in [(5u64, 1u64), (5, 2), (5, 3), (2, 4)] {
            let r = reflected_biased_walk(d, 200_000, seed);
            assert!(r.settled_levels >= 50_000);
            let p = 1.0 / d as f64;
            assert!(
                (r.return_frequency() - p).abs() < 0.01,
                "d={d} {}",
                r.return_frequency()
            );
            let mean = d as f64 / (d as f64 - 1.0);
            assert!((r.mean_visits(1, 50_000) / mean - 1.0).abs() < 0.05);
            assert!((r.fitted_return_probability() - p).abs() < 0.01);
            // geometric variance p / (1-p)^2
            let var = p / (1.0 - p).powi(2);
            assert!(
                (r.visit_variance / var - 1.0).abs() < 0.1,
                "{}",
                r.visit_variance
            );
        }
    }
}
