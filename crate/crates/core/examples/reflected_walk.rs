//! The closed-form return probability next to a simulation of the reflected
//! biased walk it is meant to describe.

use algrec::free::{reflected_biased_walk, return_probability};

fn main() {
    for d in [2u64, 3, 5, 8] {
        let p = return_probability(d);
        let r = reflected_biased_walk(d, 200_000, d);
        println!(
            "d={d}: formula {p} = {:.4}, simulated return frequency {:.4} over {} levels, \
             mean visits {:.4}, 1/d = {:.4}",
            *p.numer() as f64 / *p.denom() as f64,
            r.return_frequency(),
            r.settled_levels,
            r.visit_mean,
            1.0 / d as f64
        );
    }
}
