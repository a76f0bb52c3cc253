//! Which walk positions have their inverse in the truncated tail semigroup.

use algrec::closure::{inverse_witness_report, ClosureBudget};
use algrec::group::GroupDescriptor;
use algrec::walk::{generate_walk, SymmetricMeasure};

fn main() -> algrec::Result<()> {
    for d in [
        GroupDescriptor::ZPower(1),
        GroupDescriptor::Heisenberg,
        GroupDescriptor::Free(5),
    ] {
        let m = SymmetricMeasure::uniform_standard(d);
        let t = generate_walk(&m, 200, 3);
        let r = inverse_witness_report(&t, 1, ClosureBudget::radius(4))?;
        println!(
            "{d}: {} of {} inverses present ({} inside the ball), closure exhausted {}",
            r.present(),
            r.entries.len(),
            r.in_ball(),
            r.closure.exhausted()
        );
    }
    Ok(())
}
