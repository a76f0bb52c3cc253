//! Products, inverses, word lengths and canonical text in each supported group.

use algrec::group::{ball_size, commutator, GroupDescriptor, GroupElement};

fn main() -> algrec::Result<()> {
    let v = GroupElement::vector(vec![3, -4])?;
    println!("{v} has l1 length {}", v.word_length()?);

    let x = GroupElement::free(2, &[1, 2])?;
    let y = GroupElement::free(2, &[-2, 1])?;
    println!("({x}) * ({y}) = {}", x.multiply(&y)?);

    let a = GroupElement::heisenberg(1, 0, 0);
    let b = GroupElement::heisenberg(0, 1, 0);
    let z = commutator(&a, &b)?;
    println!("[a, b] = {z}, word length {}", z.word_length()?);

    let l = GroupElement::lamplighter(0, vec![0, 1]);
    println!("{l} has word length {}", l.word_length()?);
    println!("inverse of {l} is {}", l.invert());

    let r = GroupElement::cyclic(12, -5)?;
    println!("{r} has order-12 length {}", r.word_length()?);

    let parsed = GroupElement::parse(GroupDescriptor::Free(3), "x1 X2 x3")?;
    println!("parsed {parsed}, inverse {}", parsed.invert());

    for d in [
        GroupDescriptor::ZPower(2),
        GroupDescriptor::Free(2),
        GroupDescriptor::Heisenberg,
        GroupDescriptor::LamplighterZ,
    ] {
        let sizes: Vec<u64> = (0..=4)
            .map(|r| ball_size(d, r))
            .collect::<algrec::Result<_>>()?;
        println!("{d}: ball sizes r=0..4 {sizes:?}");
    }
    Ok(())
}
