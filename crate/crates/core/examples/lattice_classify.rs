//! Subsemigroups of Z^d: half-space normals, Caratheodory certificates and
//! Smith normal form indices.

use algrec::lattice::{classify_subsemigroup, subgroup_index, zero_in_convex_hull};

fn main() -> algrec::Result<()> {
    let sets: [&[&[i64]]; 5] = [
        &[&[1, 0], &[0, 1]],
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[2, 0], &[0, 2], &[-2, -2]],
        &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
        &[&[1, 1, 0], &[0, 1, 1], &[-1, 0, 1], &[0, -2, -2]],
    ];
    for set in sets {
        let v: Vec<Vec<i64>> = set.iter().map(|r| r.to_vec()).collect();
        let index = subgroup_index(&v)?;
        println!("{v:?}");
        println!("  {}", classify_subsemigroup(&v)?);
        println!("  {}", zero_in_convex_hull(&v)?);
        println!(
            "  rank {} index {} smith {:?}",
            index.rank, index.index, index.smith_diagonal
        );
    }
    Ok(())
}
