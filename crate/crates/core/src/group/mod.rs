//! Exact arithmetic for `Z^d`, free groups, the Heisenberg group, the
//! lamplighter over `Z`, and cyclic groups.

mod descriptor;
mod element;
mod hom;
mod identities;
pub mod metric;
mod text;

pub use descriptor::GroupDescriptor;
#[cfg(test)]
pub(crate) use element::reduce_word;
pub use element::GroupElement;
pub use hom::{commutator, Homomorphism, HomomorphismKind};
pub use identities::{
    nilpotent_identity_check, torsion_inverse_witness, z_inverse_witness, NilpotentCheck,
    ZInverseCertificate,
};
pub use metric::{ball, ball_size, CappedMetric, WORD_LENGTH_CAP};

#[cfg(test)]
mod laws {
    //! Group axioms over every family.

    use super::*;
    use proptest::prelude::*;

    const DESCRIPTORS: [GroupDescriptor; 7] = [
        GroupDescriptor::ZPower(1),
        GroupDescriptor::ZPower(3),
        GroupDescriptor::Free(2),
        GroupDescriptor::Free(5),
        GroupDescriptor::Heisenberg,
        GroupDescriptor::LamplighterZ,
        GroupDescriptor::CyclicZ(12),
    ];

    fn random_word(desc: GroupDescriptor, picks: &[usize]) -> GroupElement {
        let gens = GroupElement::standard_generators(desc);
        let picked: Vec<&GroupElement> = picks.iter().map(|i| &gens[i % gens.len()]).collect();
        picked
            .into_iter()
            .fold(GroupElement::identity(desc), |acc, g| {
                acc.multiply(g).unwrap()
            })
    }

    #[test]
    fn associativity_exhaustive_on_radius_two() {
        for desc in DESCRIPTORS {
            let b = ball(desc, 2).unwrap();
            for g in &b {
                for h in &b {
                    let gh = g.multiply(h).unwrap();
                    for k in &b {
                        assert_eq!(
                            gh.multiply(k).unwrap(),
                            g.multiply(&h.multiply(k).unwrap()).unwrap(),
                            "{desc}: ({g})({h})({k})"
                        );
                    }
                }
            }
        }
    }

    fn heis_matrix(g: &GroupElement) -> [[i64; 3]; 3] {
        let (a, b, c) = g.as_heisenberg().unwrap();
        [[1, a, c], [0, 1, b], [0, 0, 1]]
    }

    proptest! {
        #[test]
        fn associativity_random(which in 0usize..7,
                                p in proptest::collection::vec(0usize..16, 0..=6),
                                q in proptest::collection::vec(0usize..16, 0..=6),
                                r in proptest::collection::vec(0usize..16, 0..=6)) {
            let desc = DESCRIPTORS[which];
            let (g, h, k) = (random_word(desc, &p), random_word(desc, &q), random_word(desc, &r));
            prop_assert_eq!(
                g.multiply(&h).unwrap().multiply(&k).unwrap(),
                g.multiply(&h.multiply(&k).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_law(which in 0usize..7, p in proptest::collection::vec(0usize..16, 0..=20)) {
            let desc = DESCRIPTORS[which];
            let g = random_word(desc, &p);
            prop_assert!(g.multiply(&g.invert()).unwrap().is_identity());
            prop_assert!(g.invert().multiply(&g).unwrap().is_identity());
            prop_assert_eq!(g.invert().invert(), g.clone());
            let id = GroupElement::identity(desc);
            prop_assert_eq!(id.multiply(&g).unwrap(), g.clone());
            prop_assert_eq!(g.multiply(&id).unwrap(), g);
        }

        #[test]
        fn free_words_stay_reduced(p in proptest::collection::vec(0usize..16, 0..=30),
                                   q in proptest::collection::vec(0usize..16, 0..=30)) {
            let desc = GroupDescriptor::Free(3);
            let prod = random_word(desc, &p).multiply(&random_word(desc, &q)).unwrap();
            let w = prod.as_word().unwrap();
            prop_assert!(w.windows(2).all(|pair| pair[0] != -pair[1]));
            let again = GroupElement::free(3, w).unwrap();
            prop_assert_eq!(again, prod);
        }

        #[test]
        fn heisenberg_matches_matrix_products(p in proptest::collection::vec(0usize..4, 1..=8)) {
            let gens = GroupElement::standard_generators(GroupDescriptor::Heisenberg);
            let mut triple = GroupElement::identity(GroupDescriptor::Heisenberg);
            let mut mat = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
            for i in p {
                triple = triple.multiply(&gens[i]).unwrap();
                let g = heis_matrix(&gens[i]);
                let mut next = [[0i64; 3]; 3];
                for (r, row) in next.iter_mut().enumerate() {
                    for (c, cell) in row.iter_mut().enumerate() {
                        *cell = (0..3).map(|k| mat[r][k] * g[k][c]).sum();
                    }
                }
                mat = next;
            }
            prop_assert_eq!(heis_matrix(&triple), mat);
        }
    }
}
