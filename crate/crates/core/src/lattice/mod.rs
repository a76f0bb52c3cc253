//! Subsemigroups of `Z^d`: a finitely generated one is either everything,
//! inside a proper subgroup, or inside a closed half-space.

mod hull;
mod matrix;
mod smith;

pub use hull::{
    classify_subsemigroup, zero_in_convex_hull, ConeWitness, SubsemigroupClass, MAX_DIMENSION,
    MAX_VECTORS,
};
pub use matrix::IntMatrix;
pub use smith::{
    smith_normal_form, subgroup_index, LatticeBasisReport, SmithDecomposition, SubgroupIndex,
};

use crate::error::{Error, Result};

/// Parses whitespace-separated integer rows, skipping blank and `#` lines.
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer {t:?}", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    if out.is_empty() {
        return Err(Error::EmptyInput("no vectors in input"));
    }
    smith::check_vectors(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rows() {
        let v = parse_vectors("# gens\n1 0\n\n0 1\n-1 -1\n").unwrap();
        assert_eq!(v, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert!(parse_vectors("").is_err());
        assert!(parse_vectors("1 2\n3\n").is_err());
        assert!(parse_vectors("1 x\n").is_err());
    }
}
