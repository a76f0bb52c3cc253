//! Symmetric measures, seeded walks and the trace text format.

use algrec::group::{GroupDescriptor, GroupElement};
use algrec::walk::{generate_walk, SymmetricMeasure, WalkTrace, Weight};

fn main() -> algrec::Result<()> {
    let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Heisenberg);
    let t = generate_walk(&m, 8, 42);
    for (n, x) in t.positions().iter().enumerate() {
        println!("X_{} = {x}", n + 1);
    }
    let text = t.to_text(&["example".into()]);
    assert_eq!(WalkTrace::from_text(&text)?, t);

    let atoms = vec![
        (GroupElement::free(2, &[1, 2])?, Weight::new(3, 10)),
        (GroupElement::free(2, &[-2, -1])?, Weight::new(3, 10)),
        (GroupElement::free(2, &[2])?, Weight::new(1, 5)),
        (GroupElement::free(2, &[-2])?, Weight::new(1, 5)),
    ];
    let custom = SymmetricMeasure::new(GroupDescriptor::Free(2), atoms)?;
    let report = custom.validate_symmetric(2)?;
    println!(
        "custom measure covers the radius-2 ball: {}, missing {}",
        report.ball_covered, report.missing
    );

    let heavy = SymmetricMeasure::heavy_tail_z2(1.5, 16, Weight::new(1, 10))?;
    let t = generate_walk(&heavy, 1000, 7);
    println!(
        "heavy-tail walk on Z^2 ends at {}",
        t.position(1000).unwrap()
    );
    Ok(())
}
