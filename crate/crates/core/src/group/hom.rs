use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomomorphismKind {
    /// `Free(d) -> ZPower(d)`, exponent sums per letter.
    Abelianize,
    /// `ZPower(1) -> CyclicZ(m)`.
    ModM,
    /// `LamplighterZ -> ZPower(1)`, forgets the lamps.
    Pos,
    /// `Heisenberg -> ZPower(2)`, `(a, b, c) -> (a, b)`.
    HeisenbergAbelianize,
}

/// One of the projections used by the quotient arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: GroupDescriptor,
    target: GroupDescriptor,
    kind: HomomorphismKind,
}

impl Homomorphism {
    pub fn abelianize(d: usize) -> Result<Self> {
        Ok(Homomorphism {
            source: GroupDescriptor::free(d)?,
            target: GroupDescriptor::ZPower(d),
            kind: HomomorphismKind::Abelianize,
        })
    }

    pub fn mod_m(m: u64) -> Result<Self> {
        Ok(Homomorphism {
            source: GroupDescriptor::ZPower(1),
            target: GroupDescriptor::cyclic(m)?,
            kind: HomomorphismKind::ModM,
        })
    }

    pub fn pos() -> Self {
        Homomorphism {
            source: GroupDescriptor::LamplighterZ,
            target: GroupDescriptor::ZPower(1),
            kind: HomomorphismKind::Pos,
        }
    }

    pub fn heisenberg_abelianize() -> Self {
        Homomorphism {
            source: GroupDescriptor::Heisenberg,
            target: GroupDescriptor::ZPower(2),
            kind: HomomorphismKind::HeisenbergAbelianize,
        }
    }

    pub fn source(&self) -> GroupDescriptor {
        self.source
    }

    pub fn target(&self) -> GroupDescriptor {
        self.target
    }

    pub fn kind(&self) -> HomomorphismKind {
        self.kind
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        g.check_descriptor(self.source)?;
        match self.kind {
            HomomorphismKind::Abelianize => {
                let d = match self.source {
                    GroupDescriptor::Free(d) => d,
                    _ => unreachable!(),
                };
                let mut sums = vec![0i64; d];
                for &l in g.as_word().expect("free element") {
                    sums[l.unsigned_abs() as usize - 1] += l.signum() as i64;
                }
                GroupElement::vector(sums)
            }
            HomomorphismKind::ModM => {
                let m = match self.target {
                    GroupDescriptor::CyclicZ(m) => m,
                    _ => unreachable!(),
                };
                let x = g.as_vector().expect("vector")[0];
                GroupElement::cyclic(m, x.rem_euclid(m as i64))
            }
            HomomorphismKind::Pos => {
                let (pos, _) = g.as_lamplighter().expect("lamplighter element");
                GroupElement::vector(vec![pos])
            }
            HomomorphismKind::HeisenbergAbelianize => {
                let (a, b, _) = g.as_heisenberg().expect("heisenberg element");
                GroupElement::vector(vec![a, b])
            }
        }
    }
}

/// `a^-1 b^-1 a b`.
pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    if a.descriptor() != b.descriptor() {
        return Err(Error::DescriptorMismatch {
            expected: a.descriptor(),
            found: b.descriptor(),
        });
    }
    GroupElement::product([&a.invert(), &b.invert(), a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::metric::ball;

    #[test]
    fn examples() {
        let pos = Homomorphism::pos();
        let x = GroupElement::lamplighter(3, vec![0, 2]);
        assert_eq!(pos.apply(&x).unwrap().as_vector(), Some(&[3][..]));

        let ab = Homomorphism::abelianize(2).unwrap();
        let w = GroupElement::free(2, &[1, 2, -1]).unwrap();
        assert_eq!(ab.apply(&w).unwrap().as_vector(), Some(&[0, 1][..]));

        let m4 = Homomorphism::mod_m(4).unwrap();
        let seven = GroupElement::vector(vec![7]).unwrap();
        assert_eq!(m4.apply(&seven).unwrap().as_residue(), Some(3));
        let neg = GroupElement::vector(vec![-7]).unwrap();
        assert_eq!(m4.apply(&neg).unwrap().as_residue(), Some(1));

        assert!(pos.apply(&w).is_err());
    }

    #[test]
    fn commutators() {
        let a = GroupElement::heisenberg(1, 0, 0);
        let b = GroupElement::heisenberg(0, 1, 0);
        assert_eq!(
            commutator(&a, &b).unwrap(),
            GroupElement::heisenberg(0, 0, 1)
        );

        let x = GroupElement::vector(vec![1, 0]).unwrap();
        let y = GroupElement::vector(vec![0, 1]).unwrap();
        assert!(commutator(&x, &y).unwrap().is_identity());

        let s = GroupElement::free(2, &[1]).unwrap();
        let t = GroupElement::free(2, &[2]).unwrap();
        assert_eq!(
            commutator(&s, &t).unwrap().as_word(),
            Some(&[-1, -2, 1, 2][..])
        );
    }

    #[test]
    fn homomorphisms_are_multiplicative_on_radius_two_balls() {
        let homs = [
            Homomorphism::abelianize(2).unwrap(),
            Homomorphism::abelianize(3).unwrap(),
            Homomorphism::mod_m(4).unwrap(),
            Homomorphism::pos(),
            Homomorphism::heisenberg_abelianize(),
        ];
        for h in homs {
            let b = ball(h.source(), 2).unwrap();
            for g in &b {
                for k in &b {
                    let lhs = h.apply(&g.multiply(k).unwrap()).unwrap();
                    let rhs = h.apply(g).unwrap().multiply(&h.apply(k).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{:?} on {g} * {k}", h.kind());
                    assert_eq!(lhs.descriptor(), h.target());
                }
            }
        }
    }
}
