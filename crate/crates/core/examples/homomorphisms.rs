//! The quotient maps used to push walks onto simpler groups.

use algrec::group::{GroupElement, Homomorphism};

fn main() -> algrec::Result<()> {
    let ab = Homomorphism::abelianize(3)?;
    let w = GroupElement::free(3, &[1, 2, -1, 3, 3])?;
    println!("{:?}: {w} -> {}", ab.kind(), ab.apply(&w)?);

    let modm = Homomorphism::mod_m(7)?;
    let n = GroupElement::vector(vec![-10])?;
    println!("{:?}: {n} -> {}", modm.kind(), modm.apply(&n)?);

    let pos = Homomorphism::pos();
    let l = GroupElement::lamplighter(-3, vec![1, 4]);
    println!("{:?}: {l} -> {}", pos.kind(), pos.apply(&l)?);

    let h = Homomorphism::heisenberg_abelianize();
    let g = GroupElement::heisenberg(2, -1, 17);
    println!("{:?}: {g} -> {}", h.kind(), h.apply(&g)?);
    Ok(())
}
