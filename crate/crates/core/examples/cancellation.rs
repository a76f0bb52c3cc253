//! How many letters cancel when a random reduced word meets a fixed pool.

use algrec::free::{cancellation_experiment, random_pool};

fn main() -> algrec::Result<()> {
    for d in [2usize, 5] {
        let pool = random_pool(d, 64, 256, 1);
        let r = cancellation_experiment(d, &[4, 16, 64, 256], 100_000, &pool, 2)?;
        for row in &r.rows {
            println!(
                "d={d} s={:>3}: P(cancel > log2 s) = {:.2e}, bound {:.2e}, max cancel {}",
                row.length,
                row.empirical(),
                row.bound,
                row.max_cancel
            );
        }
    }
    Ok(())
}
