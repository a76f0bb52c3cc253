//! Distinct-prefix counts of a free-group walk against the log2 bound.

use algrec::free::{log_bound_check, prefix_counts, smallest_passing_threshold};
use algrec::group::GroupDescriptor;
use algrec::walk::{generate_walk, SymmetricMeasure};

fn main() -> algrec::Result<()> {
    let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Free(5));
    let mut passing = 0;
    for seed in 0..20 {
        let t = generate_walk(&m, 10_000, seed);
        let s = prefix_counts(&t)?;
        let check = log_bound_check(&s, 64);
        passing += check.holds as u32;
        println!(
            "seed {seed}: depth {}, V_1..V_8 {:?}, smallest j0 {}, first violation past 64 {:?}",
            s.max_depth(),
            &s.counts[..8.min(s.counts.len())],
            smallest_passing_threshold(&s),
            check.first_violation
        );
    }
    println!("{passing}/20 seeds satisfy the bound past j0 = 64");
    Ok(())
}
