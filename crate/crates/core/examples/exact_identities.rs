//! Exact inverse witnesses and the Heisenberg central-exponent identity.

use algrec::group::{
    nilpotent_identity_check, torsion_inverse_witness, z_inverse_witness, GroupElement,
};

fn main() -> algrec::Result<()> {
    let check = nilpotent_identity_check([1, -2, 0, 3], 4, 7);
    println!(
        "c^4 d^7 e^4 f^7 = z^{}, d^7 c^4 f^7 e^4 = z^{}, identity holds: {}",
        check.exponent_pos, check.exponent_neg, check.holds
    );

    let cert = z_inverse_witness(97, -27)?;
    println!(
        "-97 = {} * (-27) + {} * 97: {}",
        cert.copies_of_y,
        cert.copies_of_x,
        cert.is_valid()
    );

    let x = GroupElement::cyclic(10, 3)?;
    let y = GroupElement::cyclic(10, 9)?;
    if let Some((k, w)) = torsion_inverse_witness(&x, &y, 10)? {
        println!("(XY)^{k} = e, so Y (XY)^{} = {w} = X^-1", k - 1);
    }
    Ok(())
}
