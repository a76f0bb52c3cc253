use crate::error::{Error, Result};
use crate::group::GroupDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Vector(Vec<i64>),
    Word { rank: usize, letters: Vec<i32> },
    Heisenberg { a: i64, b: i64, c: i64 },
    Lamplighter { pos: i64, lamps: Vec<i64> },
    Residue { modulus: u64, value: u64 },
}

/// An element of one of the supported groups, always held in canonical form.
///
/// Free words are fully reduced, lamp supports are sorted and duplicate-free,
/// and residues lie in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Repr);

impl GroupElement {
    pub fn vector(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDescriptor {
                descriptor: "ZPower(0)".into(),
                constraint: "d >= 1",
            });
        }
        Ok(GroupElement(Repr::Vector(coords)))
    }

    /// Builds a free-group element, reducing the given letters.
    pub fn free(rank: usize, letters: &[i32]) -> Result<Self> {
        GroupDescriptor::free(rank)?;
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::InvalidArgument(format!(
                    "letter {l} outside the alphabet of Free({rank})"
                )));
            }
        }
        Ok(GroupElement(Repr::Word {
            rank,
            letters: reduce_word(letters.iter().copied()),
        }))
    }

    pub fn heisenberg(a: i64, b: i64, c: i64) -> Self {
        GroupElement(Repr::Heisenberg { a, b, c })
    }

    /// Builds a lamplighter element; `lamps` is treated as a set.
    pub fn lamplighter(pos: i64, mut lamps: Vec<i64>) -> Self {
        lamps.sort_unstable();
        lamps.dedup();
        GroupElement(Repr::Lamplighter { pos, lamps })
    }

    pub fn cyclic(modulus: u64, value: i64) -> Result<Self> {
        GroupDescriptor::cyclic(modulus)?;
        let value = value.rem_euclid(modulus as i64) as u64;
        Ok(GroupElement(Repr::Residue { modulus, value }))
    }

    pub fn identity(descriptor: GroupDescriptor) -> Self {
        GroupElement(match descriptor {
            GroupDescriptor::ZPower(d) => Repr::Vector(vec![0; d]),
            GroupDescriptor::Free(rank) => Repr::Word {
                rank,
                letters: Vec::new(),
            },
            GroupDescriptor::Heisenberg => Repr::Heisenberg { a: 0, b: 0, c: 0 },
            GroupDescriptor::LamplighterZ => Repr::Lamplighter {
                pos: 0,
                lamps: Vec::new(),
            },
            GroupDescriptor::CyclicZ(modulus) => Repr::Residue { modulus, value: 0 },
        })
    }

    /// The standard symmetric generating set, in a fixed order.
    ///
    /// `ZPower(d)`: `±e_i`; `Free(d)`: every letter and its inverse;
    /// `Heisenberg`: `a±, b±`; `LamplighterZ`: `(±1, {})` and the toggle
    /// `(0, {0})`; `CyclicZ(m)`: `±1` (collapsed when `m <= 2`).
    pub fn standard_generators(descriptor: GroupDescriptor) -> Vec<GroupElement> {
        let mut gens = match descriptor {
            GroupDescriptor::ZPower(d) => (0..d)
                .flat_map(|i| {
                    [1i64, -1].into_iter().map(move |s| {
                        let mut v = vec![0; d];
                        v[i] = s;
                        GroupElement(Repr::Vector(v))
                    })
                })
                .collect(),
            GroupDescriptor::Free(rank) => (1..=rank as i32)
                .flat_map(|l| [l, -l])
                .map(|l| {
                    GroupElement(Repr::Word {
                        rank,
                        letters: vec![l],
                    })
                })
                .collect(),
            GroupDescriptor::Heisenberg => vec![
                Self::heisenberg(1, 0, 0),
                Self::heisenberg(-1, 0, 0),
                Self::heisenberg(0, 1, 0),
                Self::heisenberg(0, -1, 0),
            ],
            GroupDescriptor::LamplighterZ => vec![
                Self::lamplighter(1, vec![]),
                Self::lamplighter(-1, vec![]),
                Self::lamplighter(0, vec![0]),
            ],
            GroupDescriptor::CyclicZ(m) => {
                let m = m as i64;
                vec![
                    GroupElement(Repr::Residue {
                        modulus: m as u64,
                        value: 1i64.rem_euclid(m) as u64,
                    }),
                    GroupElement(Repr::Residue {
                        modulus: m as u64,
                        value: (-1i64).rem_euclid(m) as u64,
                    }),
                ]
            }
        };
        gens.dedup();
        gens
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        match &self.0 {
            Repr::Vector(v) => GroupDescriptor::ZPower(v.len()),
            Repr::Word { rank, .. } => GroupDescriptor::Free(*rank),
            Repr::Heisenberg { .. } => GroupDescriptor::Heisenberg,
            Repr::Lamplighter { .. } => GroupDescriptor::LamplighterZ,
            Repr::Residue { modulus, .. } => GroupDescriptor::CyclicZ(*modulus),
        }
    }

    pub fn as_vector(&self) -> Option<&[i64]> {
        match &self.0 {
            Repr::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&[i32]> {
        match &self.0 {
            Repr::Word { letters, .. } => Some(letters),
            _ => None,
        }
    }

    pub fn as_heisenberg(&self) -> Option<(i64, i64, i64)> {
        match self.0 {
            Repr::Heisenberg { a, b, c } => Some((a, b, c)),
            _ => None,
        }
    }

    pub fn as_lamplighter(&self) -> Option<(i64, &[i64])> {
        match &self.0 {
            Repr::Lamplighter { pos, lamps } => Some((*pos, lamps)),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Residue { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.0 {
            Repr::Vector(v) => v.iter().all(|&x| x == 0),
            Repr::Word { letters, .. } => letters.is_empty(),
            Repr::Heisenberg { a, b, c } => (*a, *b, *c) == (0, 0, 0),
            Repr::Lamplighter { pos, lamps } => *pos == 0 && lamps.is_empty(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        let repr = match (&self.0, &other.0) {
            (Repr::Vector(x), Repr::Vector(y)) if x.len() == y.len() => {
                Repr::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (
                Repr::Word { rank, letters: x },
                Repr::Word {
                    rank: rank2,
                    letters: y,
                },
            ) if rank == rank2 => Repr::Word {
                rank: *rank,
                letters: concat_reduced(x, y),
            },
            (
                &Repr::Heisenberg {
                    a: a1,
                    b: b1,
                    c: c1,
                },
                &Repr::Heisenberg {
                    a: a2,
                    b: b2,
                    c: c2,
                },
            ) => Repr::Heisenberg {
                a: a1 + a2,
                b: b1 + b2,
                c: c1 + c2 + a1 * b2,
            },
            (Repr::Lamplighter { pos: x, lamps: f }, Repr::Lamplighter { pos: y, lamps: g }) => {
                Repr::Lamplighter {
                    pos: x + y,
                    lamps: symmetric_difference_shifted(f, g, *x),
                }
            }
            (
                &Repr::Residue { modulus, value: x },
                &Repr::Residue {
                    modulus: m2,
                    value: y,
                },
            ) if modulus == m2 => Repr::Residue {
                modulus,
                value: ((x as u128 + y as u128) % modulus as u128) as u64,
            },
            _ => {
                return Err(Error::DescriptorMismatch {
                    expected: self.descriptor(),
                    found: other.descriptor(),
                })
            }
        };
        Ok(GroupElement(repr))
    }

    pub fn invert(&self) -> GroupElement {
        GroupElement(match &self.0 {
            Repr::Vector(v) => Repr::Vector(v.iter().map(|x| -x).collect()),
            Repr::Word { rank, letters } => Repr::Word {
                rank: *rank,
                letters: letters.iter().rev().map(|l| -l).collect(),
            },
            &Repr::Heisenberg { a, b, c } => Repr::Heisenberg {
                a: -a,
                b: -b,
                c: a * b - c,
            },
            Repr::Lamplighter { pos, lamps } => Repr::Lamplighter {
                pos: -pos,
                lamps: lamps.iter().map(|t| t - pos).collect(),
            },
            &Repr::Residue { modulus, value } => Repr::Residue {
                modulus,
                value: (modulus - value) % modulus,
            },
        })
    }

    /// `self^k` for `k >= 0` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> GroupElement {
        let mut acc = GroupElement::identity(self.descriptor());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base).expect("same descriptor");
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base).expect("same descriptor");
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed.
    pub fn zpow(&self, k: i64) -> GroupElement {
        if k >= 0 {
            self.pow(k as u64)
        } else {
            self.invert().pow(k.unsigned_abs())
        }
    }

    /// Product of a nonempty sequence of elements sharing a descriptor.
    pub fn product<'a, I>(items: I) -> Result<GroupElement>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut iter = items.into_iter();
        let first = iter
            .next()
            .ok_or(Error::EmptyInput("product of zero elements"))?
            .clone();
        iter.try_fold(first, |acc, x| acc.multiply(x))
    }

    pub(crate) fn check_descriptor(&self, expected: GroupDescriptor) -> Result<()> {
        let found = self.descriptor();
        if found == expected {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { expected, found })
        }
    }
}

pub(crate) fn reduce_word<I: IntoIterator<Item = i32>>(letters: I) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn concat_reduced(x: &[i32], y: &[i32]) -> Vec<i32> {
    let c = crate::free::cancel(x, y);
    let mut out = Vec::with_capacity(x.len() + y.len() - 2 * c);
    out.extend_from_slice(&x[..x.len() - c]);
    out.extend_from_slice(&y[c..]);
    out
}

// supp(f) xor (supp(g) + shift), both inputs sorted.
fn symmetric_difference_shifted(f: &[i64], g: &[i64], shift: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < g.len() {
        let gj = g.get(j).map(|t| t + shift);
        match (f.get(i), gj) {
            (Some(&a), Some(b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(&a), Some(b)) if a < b => {
                out.push(a);
                i += 1;
            }
            (Some(_), Some(b)) | (None, Some(b)) => {
                out.push(b);
                j += 1;
            }
            (Some(&a), None) => {
                out.push(a);
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis_matrix(g: &GroupElement) -> [[i64; 3]; 3] {
        let (a, b, c) = g.as_heisenberg().unwrap();
        [[1, a, c], [0, 1, b], [0, 0, 1]]
    }

    fn matmul(x: [[i64; 3]; 3], y: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
        let mut out = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn identities() {
        assert_eq!(
            GroupElement::identity(GroupDescriptor::ZPower(2)).as_vector(),
            Some(&[0, 0][..])
        );
        assert_eq!(
            GroupElement::identity(GroupDescriptor::Free(3)).as_word(),
            Some(&[][..])
        );
        assert_eq!(
            GroupElement::identity(GroupDescriptor::LamplighterZ).as_lamplighter(),
            Some((0, &[][..]))
        );
    }

    #[test]
    fn lamplighter_product() {
        let x = GroupElement::lamplighter(1, vec![0]);
        let y = GroupElement::lamplighter(-1, vec![0]);
        assert_eq!(
            x.multiply(&y).unwrap(),
            GroupElement::lamplighter(0, vec![0, 1])
        );
    }

    #[test]
    fn free_product_cancels() {
        let x = GroupElement::free(2, &[1, 2]).unwrap();
        let y = GroupElement::free(2, &[-2, 1]).unwrap();
        assert_eq!(x.multiply(&y).unwrap().as_word(), Some(&[1, 1][..]));
        assert_eq!(
            GroupElement::free(2, &[1, 2, -2, -1, 2]).unwrap().as_word(),
            Some(&[2][..])
        );
        assert!(GroupElement::free(2, &[3]).is_err());
        assert!(GroupElement::free(2, &[0]).is_err());
    }

    #[test]
    fn heisenberg_product_and_inverse_agree_with_matrices() {
        let a = GroupElement::heisenberg(1, 0, 0);
        let b = GroupElement::heisenberg(0, 1, 0);
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab, GroupElement::heisenberg(1, 1, 1));
        assert_eq!(heis_matrix(&ab), matmul(heis_matrix(&a), heis_matrix(&b)));

        let g = GroupElement::heisenberg(1, 1, 1);
        let inv = g.invert();
        assert_eq!(inv, GroupElement::heisenberg(-1, -1, 0));
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(matmul(heis_matrix(&g), heis_matrix(&inv)), id);
    }

    #[test]
    fn inverses() {
        let v = GroupElement::vector(vec![1, -2, 5]).unwrap();
        assert_eq!(v.invert().as_vector(), Some(&[-1, 2, -5][..]));
        let w = GroupElement::free(2, &[1, -2, 1]).unwrap();
        assert_eq!(w.invert().as_word(), Some(&[-1, 2, -1][..]));
        let l = GroupElement::lamplighter(2, vec![0, 5]);
        assert!(l.multiply(&l.invert()).unwrap().is_identity());
        let r = GroupElement::cyclic(6, 2).unwrap();
        assert_eq!(r.invert().as_residue(), Some(4));
        assert_eq!(
            GroupElement::cyclic(6, 0).unwrap().invert().as_residue(),
            Some(0)
        );
    }

    #[test]
    fn mismatch_is_reported() {
        let x = GroupElement::cyclic(6, 1).unwrap();
        let y = GroupElement::cyclic(5, 1).unwrap();
        assert!(matches!(
            x.multiply(&y),
            Err(Error::DescriptorMismatch { .. })
        ));
        let z = GroupElement::vector(vec![1]).unwrap();
        assert!(x.multiply(&z).is_err());
    }

    #[test]
    fn powers() {
        let z = GroupElement::heisenberg(0, 0, 1);
        assert_eq!(z.zpow(-3), GroupElement::heisenberg(0, 0, -3));
        let a = GroupElement::heisenberg(1, 0, 2);
        assert_eq!(a.pow(4), GroupElement::heisenberg(4, 0, 8));
        assert!(GroupElement::cyclic(7, 3).unwrap().pow(7).is_identity());
    }

    #[test]
    fn generator_sets() {
        assert_eq!(
            GroupElement::standard_generators(GroupDescriptor::Free(5)).len(),
            10
        );
        assert_eq!(
            GroupElement::standard_generators(GroupDescriptor::ZPower(3)).len(),
            6
        );
        assert_eq!(
            GroupElement::standard_generators(GroupDescriptor::LamplighterZ).len(),
            3
        );
        assert_eq!(
            GroupElement::standard_generators(GroupDescriptor::CyclicZ(2)).len(),
            1
        );
        assert_eq!(
            GroupElement::standard_generators(GroupDescriptor::CyclicZ(1)).len(),
            1
        );
    }
}
