//! Budget-bounded closures, tri-state membership and ball coverage.

use algrec::closure::{closure, ClosureBudget};
use algrec::group::GroupElement;

fn main() -> algrec::Result<()> {
    let gens = [
        GroupElement::vector(vec![2])?,
        GroupElement::vector(vec![3])?,
    ];
    let c = closure(&gens, ClosureBudget::radius(10))?;
    print!("{}", c.dump(&[]));
    for q in [7, 1, 11] {
        let g = GroupElement::vector(vec![q])?;
        println!("{q}: {}", c.contains(&g)?.as_str());
    }
    println!("coverage of the radius-2 ball: {}", c.coverage_fraction(2)?);

    let h = [
        GroupElement::heisenberg(1, 0, 0),
        GroupElement::heisenberg(0, 1, 0),
        GroupElement::heisenberg(-1, -1, 0),
    ];
    let c = closure(&h, ClosureBudget::radius(4))?;
    println!(
        "Heisenberg closure: {} elements, sphere counts {:?}, radius-4 coverage {}",
        c.len(),
        c.sphere_counts()?,
        c.coverage_fraction(4)?
    );
    Ok(())
}
