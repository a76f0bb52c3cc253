//! Exact checks of the algebraic identities behind the recurrence arguments:
//! inverse witnesses through a torsion kernel, the two-sided inverse identity
//! in `Z`, and the central-exponent identity in the Heisenberg group.

use crate::error::{Error, Result};
use crate::group::{commutator, GroupElement};

/// Outcome of [`nilpotent_identity_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NilpotentCheck {
    /// Central exponent of `c^n d^m e^n f^m`.
    pub exponent_pos: i64,
    /// Central exponent of `d^m c^n f^m e^n`.
    pub exponent_neg: i64,
    pub holds: bool,
}

/// With `a = H(1,0,0)`, `b = H(0,1,0)`, `z = [a, b]` and
/// `c = a z^k1`, `d = b z^k2`, `e = a^-1 z^k3`, `f = b^-1 z^k4`, multiplies out
/// `c^n d^m e^n f^m` and `d^m c^n f^m e^n` and compares their central
/// exponents with `nm + L` and `-nm + L`, where `L = (k1+k3)n + (k2+k4)m`.
pub fn nilpotent_identity_check(k: [i64; 4], n: u64, m: u64) -> NilpotentCheck {
    let a = GroupElement::heisenberg(1, 0, 0);
    let b = GroupElement::heisenberg(0, 1, 0);
    let z = commutator(&a, &b).expect("same group");
    let shift = |g: &GroupElement, e: i64| g.multiply(&z.zpow(e)).expect("same group");
    let c = shift(&a, k[0]);
    let d = shift(&b, k[1]);
    let e = shift(&a.invert(), k[2]);
    let f = shift(&b.invert(), k[3]);

    let (cn, dm, en, fm) = (c.pow(n), d.pow(m), e.pow(n), f.pow(m));
    let forward = GroupElement::product([&cn, &dm, &en, &fm]).expect("same group");
    let backward = GroupElement::product([&dm, &cn, &fm, &en]).expect("same group");

    let central = |g: &GroupElement| match g.as_heisenberg() {
        Some((0, 0, c)) => Some(c),
        _ => None,
    };
    let (n, m) = (n as i64, m as i64);
    let l = (k[0] + k[2]) * n + (k[1] + k[3]) * m;
    match (central(&forward), central(&backward)) {
        (Some(pos), Some(neg)) => NilpotentCheck {
            exponent_pos: pos,
            exponent_neg: neg,
            holds: pos == n * m + l && neg == -n * m + l,
        },
        _ => NilpotentCheck {
            exponent_pos: forward.as_heisenberg().map_or(0, |t| t.2),
            exponent_neg: backward.as_heisenberg().map_or(0, |t| t.2),
            holds: false,
        },
    }
}

/// Least `k <= max_k` with `(XY)^k = e`, together with `Y (XY)^(k-1)`, which
/// then equals `X^-1`.
pub fn torsion_inverse_witness(
    x: &GroupElement,
    y: &GroupElement,
    max_k: u64,
) -> Result<Option<(u64, GroupElement)>> {
    let xy = x.multiply(y)?;
    let mut power = xy.clone();
    let mut prev = GroupElement::identity(x.descriptor());
    for k in 1..=max_k {
        if power.is_identity() {
            let witness = y.multiply(&prev)?;
            debug_assert_eq!(witness, x.invert());
            return Ok(Some((k, witness)));
        }
        prev = power.clone();
        power = power.multiply(&xy)?;
    }
    Ok(None)
}

/// Nonnegative multiplicities writing `-x` as a sum of copies of `x` and of
/// an opposite-signed element `y` of the same semigroup.
///
/// For `x > 0 > y`: `x * y + (-y - 1) * x = -x`.
/// For `x < 0 < y`: `(y - 1) * x + (-x) * y = -x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZInverseCertificate {
    pub x: i64,
    pub y: i64,
    pub copies_of_y: u64,
    pub copies_of_x: u64,
}

impl ZInverseCertificate {
    pub fn evaluate(&self) -> i64 {
        self.copies_of_y as i64 * self.y + self.copies_of_x as i64 * self.x
    }

    pub fn is_valid(&self) -> bool {
        self.evaluate() == -self.x && self.copies_of_x + self.copies_of_y > 0
    }
}

pub fn z_inverse_witness(x: i64, y: i64) -> Result<ZInverseCertificate> {
    if x == 0 {
        return Err(Error::InvalidArgument("x must be nonzero".into()));
    }
    if y == 0 || y.signum() == x.signum() {
        return Err(Error::InvalidArgument(format!(
            "y = {y} must have the opposite sign of x = {x}"
        )));
    }
    let cert = if x > 0 {
        ZInverseCertificate {
            x,
            y,
            copies_of_y: x as u64,
            copies_of_x: (-y - 1) as u64,
        }
    } else {
        ZInverseCertificate {
            x,
            y,
            copies_of_y: (-x) as u64,
            copies_of_x: (y - 1) as u64,
        }
    };
    debug_assert!(cert.is_valid());
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_examples() {
        assert_eq!(
            nilpotent_identity_check([0, 0, 0, 0], 2, 3),
            NilpotentCheck {
                exponent_pos: 6,
                exponent_neg: -6,
                holds: true
            }
        );
        assert_eq!(
            nilpotent_identity_check([1, 0, -1, 0], 1, 1),
            NilpotentCheck {
                exponent_pos: 1,
                exponent_neg: -1,
                holds: true
            }
        );
        assert_eq!(
            nilpotent_identity_check([1, 2, 3, 4], 5, 7),
            NilpotentCheck {
                exponent_pos: 97,
                exponent_neg: 27,
                holds: true
            }
        );
    }

    #[test]
    fn torsion_examples() {
        let c6 = |v| GroupElement::cyclic(6, v).unwrap();
        let (k, w) = torsion_inverse_witness(&c6(2), &c6(1), 6).unwrap().unwrap();
        assert_eq!((k, w.as_residue()), (2, Some(4)));

        let c5 = |v| GroupElement::cyclic(5, v).unwrap();
        let (k, w) = torsion_inverse_witness(&c5(3), &c5(2), 5).unwrap().unwrap();
        assert_eq!((k, w.as_residue()), (1, Some(2)));

        let x = GroupElement::lamplighter(0, vec![0]);
        let y = GroupElement::lamplighter(0, vec![1]);
        let (k, w) = torsion_inverse_witness(&x, &y, 4).unwrap().unwrap();
        assert_eq!(k, 2);
        assert_eq!(w, GroupElement::lamplighter(0, vec![0]));
        assert!(w.multiply(&x).unwrap().is_identity());
    }

    #[test]
    fn torsion_absent_when_product_has_infinite_order() {
        let x = GroupElement::lamplighter(1, vec![0]);
        let y = GroupElement::lamplighter(0, vec![]);
        assert_eq!(torsion_inverse_witness(&x, &y, 50).unwrap(), None);
        let c7 = |v| GroupElement::cyclic(7, v).unwrap();
        assert_eq!(torsion_inverse_witness(&c7(1), &c7(1), 6).unwrap(), None);
    }

    #[test]
    fn lamplighter_witness_through_position_quotient() {
        // pos(Y) = -pos(X) puts XY in the exponent-two lamp kernel.
        let x = GroupElement::lamplighter(3, vec![-1, 4]);
        let y = GroupElement::lamplighter(-3, vec![0, 2, 7]);
        let (k, w) = torsion_inverse_witness(&x, &y, 2).unwrap().unwrap();
        assert!(k <= 2);
        assert_eq!(w, x.invert());
    }

    #[test]
    fn z_examples() {
        let c = z_inverse_witness(3, -2).unwrap();
        assert_eq!((c.copies_of_y, c.copies_of_x, c.evaluate()), (3, 1, -3));
        let c = z_inverse_witness(1, -1).unwrap();
        assert_eq!((c.copies_of_y, c.copies_of_x, c.evaluate()), (1, 0, -1));
        let c = z_inverse_witness(7, -5).unwrap();
        assert_eq!((c.copies_of_y, c.copies_of_x, c.evaluate()), (7, 4, -7));
        let c = z_inverse_witness(-4, 3).unwrap();
        assert_eq!((c.copies_of_x, c.copies_of_y, c.evaluate()), (2, 4, 4));
        assert!(z_inverse_witness(0, -1).is_err());
        assert!(z_inverse_witness(2, 0).is_err());
        assert!(z_inverse_witness(2, 5).is_err());
    }
}
