use std::io::Write;

use crate::closure::ClosureResult;
use crate::error::Result;
use crate::free::require_free;
use crate::walk::csv_err;

/// Sphere counts of a truncated free-group closure and their growth rate.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProfile {
    pub rank: usize,
    /// Closure elements of word length `r`, radius 0 first.
    pub counts: Vec<u64>,
    /// Least-squares slope of `log2 count` against `r` over nonzero radii
    /// `r >= 1`; 0 when fewer than two points are available.
    pub slope: f64,
    /// `log2(2d - 1)`, the slope of the full sphere sizes.
    pub ambient_slope: f64,
}

impl GrowthProfile {
    /// Whether the profile stays below the `4^r` line.
    pub fn below_four_power(&self) -> bool {
        self.slope < 2.0
    }

    /// CSV rows `r,count`.
    pub fn write_csv<W: Write>(&self, mut out: W, extra_metadata: &[String]) -> Result<()> {
        for line in extra_metadata {
            writeln!(out, "# {line}")?;
        }
        writeln!(
            out,
            "# growth d={} slope={:.6} ambient_slope={:.6} below_four_power={}",
            self.rank,
            self.slope,
            self.ambient_slope,
            self.below_four_power()
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "count"]).map_err(csv_err)?;
        for (r, c) in self.counts.iter().enumerate() {
            w.write_record([r.to_string(), c.to_string()])
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn log2_slope(counts: &[u64]) -> f64 {
    let pts: Vec<(f64, f64)> = counts
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| (r as f64, (c as f64).log2()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn sphere_growth_profile(closure: &ClosureResult) -> Result<GrowthProfile> {
    let rank = require_free(closure.descriptor())?;
    let counts = closure.sphere_counts()?;
    Ok(GrowthProfile {
        rank,
        slope: log2_slope(&counts),
        counts,
        ambient_slope: ((2 * rank - 1) as f64).log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{closure, closure_of_tail, ClosureBudget};
    use crate::group::{GroupDescriptor, GroupElement};
    use crate::walk::{generate_walk, SymmetricMeasure};

    fn word(l: &[i32]) -> GroupElement {
        GroupElement::free(5, l).unwrap()
    }

    #[test]
    fn cyclic_and_free_monoid() {
        let c = closure(&[word(&[1])], ClosureBudget::radius(6)).unwrap();
        let p = sphere_growth_profile(&c).unwrap();
        assert_eq!(p.counts, vec![0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(p.slope, 0.0);

        let c = closure(&[word(&[1]), word(&[2])], ClosureBudget::radius(6)).unwrap();
        let p = sphere_growth_profile(&c).unwrap();
        assert_eq!(p.counts, vec![0, 2, 4, 8, 16, 32, 64]);
        assert!((p.slope - 1.0).abs() < 1e-12);
        assert!(p.below_four_power());
    }

    #[test]
    fn walk_closure_profile() {
        let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Free(5));
        let t = generate_walk(&m, 50, 17);
        let c = closure_of_tail(&t, 1, ClosureBudget::radius(8)).unwrap();
        let p = sphere_growth_profile(&c).unwrap();
        assert_eq!(p.counts.len(), 9);
        assert!(p.slope.is_finite());
        assert!((p.ambient_slope - 9f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn wrong_group() {
        let g = GroupElement::vector(vec![1]).unwrap();
        let c = closure(&[g], ClosureBudget::radius(3)).unwrap();
        assert!(sphere_growth_profile(&c).is_err());
    }
}
