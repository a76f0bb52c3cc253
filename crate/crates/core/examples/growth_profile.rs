//! Sphere counts of walk closures in F_2 and F_5, paired by seed.

use algrec::closure::{closure_of_tail, ClosureBudget};
use algrec::free::sphere_growth_profile;
use algrec::group::GroupDescriptor;
use algrec::walk::{generate_walk, SymmetricMeasure};

fn main() -> algrec::Result<()> {
    for seed in 1..=3 {
        for d in [2, 5] {
            let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Free(d));
            let t = generate_walk(&m, 50, seed);
            let c = closure_of_tail(&t, 1, ClosureBudget::radius(8))?;
            let p = sphere_growth_profile(&c)?;
            println!(
                "seed {seed} F_{d}: counts {:?}, slope {:.3} vs ambient {:.3}, below 4^r {}",
                p.counts,
                p.slope,
                p.ambient_slope,
                p.below_four_power()
            );
        }
    }
    Ok(())
}
