//! Separating half-spaces and Carathéodory certificates for finite sets of
//! integer vectors, in exact arithmetic.
//!
//! A set is half-space trapped when some nonzero normal has nonnegative
//! inner product with every vector (closed half-space, so sets spanning a
//! proper subspace always qualify). Otherwise 0 is interior to the convex
//! hull and a certificate `sum t_i x_i = 0` with all `t_i > 0` is returned,
//! its first `d` points linearly independent.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::smith::{check_vectors, subgroup_index, SubgroupIndex};
use crate::lattice::IntMatrix;

pub const MAX_DIMENSION: usize = 6;
pub const MAX_VECTORS: usize = 64;

// Simplex certificates are searched exhaustively up to this many subsets.
const SIMPLEX_SEARCH_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeWitness {
    HalfSpace {
        normal: Vec<i64>,
    },
    ZeroInHull {
        points: Vec<Vec<i64>>,
        coefficients: Vec<Ratio<i64>>,
    },
}

impl ConeWitness {
    /// Re-checks the witness against `vectors` from scratch.
    pub fn verify(&self, vectors: &[Vec<i64>]) -> bool {
        match self {
            ConeWitness::HalfSpace { normal } => {
                normal.iter().any(|&x| x != 0) && vectors.iter().all(|v| dot(normal, v) >= 0)
            }
            ConeWitness::ZeroInHull {
                points,
                coefficients,
            } => {
                let d = match points.first() {
                    Some(p) => p.len(),
                    None => return false,
                };
                if points.len() != coefficients.len()
                    || points.len() <= d
                    || coefficients.iter().any(|t| *t <= Ratio::from_integer(0))
                    || points.iter().any(|p| !vectors.contains(p))
                {
                    return false;
                }
                let zero = (0..d).all(|j| {
                    points
                        .iter()
                        .zip(coefficients)
                        .map(|(p, t)| *t * Ratio::from_integer(p[j]))
                        .sum::<Ratio<i64>>()
                        == Ratio::from_integer(0)
                });
                zero && IntMatrix::from_rows(&points[..d]).rank() == d
            }
        }
    }
}

impl fmt::Display for ConeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeWitness::HalfSpace { normal } => write!(f, "HalfSpace {}", fmt_vec(normal)),
            ConeWitness::ZeroInHull {
                points,
                coefficients,
            } => {
                f.write_str("ZeroInHull")?;
                for (p, t) in points.iter().zip(coefficients) {
                    write!(f, " {t}*{}", fmt_vec(p))?;
                }
                Ok(())
            }
        }
    }
}

pub(crate) fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<i128>) -> Vec<i64> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    let g = if g == 0 { 1 } else { g };
    v.into_iter().map(|x| (x / g) as i64).collect()
}

/// Visits every `k`-subset of `0..n` in lexicographic order until `f` returns true.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return false;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Signed cofactors of a `k x (k+1)` matrix: a vector orthogonal to its rows,
/// nonzero iff the rows are independent.
fn cofactor_vector(rows: &[&[i64]], width: usize) -> Vec<i128> {
    (0..width)
        .map(|skip| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let det = if minor.is_empty() {
                1
            } else {
                IntMatrix::from_rows(&minor).determinant()
            };
            if skip % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn check_desk_scale(vectors: &[Vec<i64>]) -> Result<usize> {
    let d = check_vectors(vectors)?;
    if d > MAX_DIMENSION || vectors.len() > MAX_VECTORS {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_VECTORS} vectors of dimension at most {MAX_DIMENSION} supported"
        )));
    }
    Ok(d)
}

pub fn zero_in_convex_hull(vectors: &[Vec<i64>]) -> Result<ConeWitness> {
    let d = check_desk_scale(vectors)?;
    let mut distinct: Vec<Vec<i64>> = Vec::new();
    for v in vectors {
        if !distinct.contains(v) {
            distinct.push(v.clone());
        }
    }
    let witness = match half_space(&distinct, d) {
        Some(normal) => ConeWitness::HalfSpace { normal },
        None => interior_certificate(&distinct, d),
    };
    assert!(
        witness.verify(vectors),
        "internal certificate check failed: {witness}"
    );
    Ok(witness)
}

// Normal of a closed half-space containing every vector, if one exists. When
// the set spans, such normals are sums of facet normals, each orthogonal to
// d-1 independent vectors; all valid facet normals are summed so the result
// is strictly positive on as many vectors as possible.
fn half_space(vectors: &[Vec<i64>], d: usize) -> Option<Vec<i64>> {
    let a = IntMatrix::from_rows(vectors);
    let report = subgroup_index(vectors).expect("validated input");
    if report.rank < d {
        let v = &report.decomposition().v;
        return Some(primitive(v.column(report.rank)));
    }
    let _ = a;
    let mut facets: Vec<Vec<i64>> = Vec::new();
    for_each_subset(vectors.len(), d - 1, |idx| {
        let rows: Vec<&[i64]> = idx.iter().map(|&i| vectors[i].as_slice()).collect();
        let n = cofactor_vector(&rows, d);
        if n.iter().all(|&x| x == 0) {
            return false;
        }
        let n = primitive(n);
        let signs: Vec<i64> = vectors.iter().map(|v| dot(&n, v).signum()).collect();
        let oriented = if signs.iter().all(|&s| s >= 0) {
            Some(n)
        } else if signs.iter().all(|&s| s <= 0) {
            Some(n.iter().map(|x| -x).collect())
        } else {
            None
        };
        if let Some(n) = oriented {
            if !facets.contains(&n) {
                facets.push(n);
            }
        }
        false
    });
    if facets.is_empty() {
        return None;
    }
    let sum: Vec<i128> = (0..d)
        .map(|j| facets.iter().map(|n| n[j] as i128).sum())
        .collect();
    Some(primitive(sum))
}

// 0 is interior: prefer a (d+1)-point simplex, else a basis plus a conic
// Carathéodory combination of minus its sum.
fn interior_certificate(vectors: &[Vec<i64>], d: usize) -> ConeWitness {
    if binomial(vectors.len() as u64, d as u64 + 1) <= SIMPLEX_SEARCH_LIMIT {
        let mut found = None;
        for_each_subset(vectors.len(), d + 1, |idx| {
            // columns are the points; the cofactor vector spans the kernel
            let cols: Vec<Vec<i64>> = (0..d)
                .map(|j| idx.iter().map(|&i| vectors[i][j]).collect())
                .collect();
            let rows: Vec<&[i64]> = cols.iter().map(|c| c.as_slice()).collect();
            let t = cofactor_vector(&rows, d + 1);
            let positive = t.iter().all(|&x| x > 0);
            let negative = t.iter().all(|&x| x < 0);
            if positive || negative {
                let t = primitive(t.into_iter().map(|x| x.abs()).collect());
                found = Some(ConeWitness::ZeroInHull {
                    points: idx.iter().map(|&i| vectors[i].clone()).collect(),
                    coefficients: t.into_iter().map(Ratio::from_integer).collect(),
                });
                true
            } else {
                false
            }
        });
        if let Some(w) = found {
            return w;
        }
    }

    let mut basis: Vec<usize> = Vec::new();
    for i in 0..vectors.len() {
        let mut trial: Vec<&Vec<i64>> = basis.iter().map(|&b| &vectors[b]).collect();
        trial.push(&vectors[i]);
        if IntMatrix::from_rows(&trial).rank() == trial.len() {
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    let target: Vec<i64> = (0..d)
        .map(|j| -basis.iter().map(|&b| vectors[b][j]).sum::<i64>())
        .collect();

    let mut combo: Option<Vec<(usize, Ratio<i64>)>> = None;
    for_each_subset(vectors.len(), d, |idx| {
        // solve sum c_k v_idx[k] = target by Cramer's rule
        let m: Vec<Vec<i64>> = (0..d)
            .map(|j| idx.iter().map(|&i| vectors[i][j]).collect())
            .collect();
        let det = IntMatrix::from_rows(&m).determinant();
        if det == 0 {
            return false;
        }
        let mut coeffs = Vec::with_capacity(d);
        for k in 0..d {
            let mut mk = m.clone();
            for j in 0..d {
                mk[j][k] = target[j];
            }
            let c = Ratio::new(IntMatrix::from_rows(&mk).determinant() as i64, det as i64);
            if c < Ratio::from_integer(0) {
                return false;
            }
            coeffs.push((idx[k], c));
        }
        combo = Some(coeffs);
        true
    });
    let combo = combo.expect("a spanning cone equal to R^d contains every vector");

    let mut points: Vec<Vec<i64>> = basis.iter().map(|&b| vectors[b].clone()).collect();
    let mut coefficients: Vec<Ratio<i64>> = vec![Ratio::from_integer(1); d];
    for (i, c) in combo {
        if c == Ratio::from_integer(0) {
            continue;
        }
        match basis.iter().position(|&b| b == i) {
            Some(k) => coefficients[k] += c,
            None => {
                points.push(vectors[i].clone());
                coefficients.push(c);
            }
        }
    }
    ConeWitness::ZeroInHull {
        points,
        coefficients,
    }
}

/// Where the subsemigroup generated by a set of vectors sits inside `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsemigroupClass {
    Full,
    /// 0 is interior to the hull, so the semigroup is the generated
    /// subgroup, which is proper.
    InProperSubgroup {
        index: SubgroupIndex,
        rank: usize,
    },
    InHalfSpace {
        normal: Vec<i64>,
    },
}

impl fmt::Display for SubsemigroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsemigroupClass::Full => f.write_str("Full"),
            SubsemigroupClass::InProperSubgroup { index, rank } => {
                write!(f, "InProperSubgroup index={index} rank={rank}")
            }
            SubsemigroupClass::InHalfSpace { normal } => {
                write!(f, "InHalfSpace {}", fmt_vec(normal))
            }
        }
    }
}

pub fn classify_subsemigroup(generators: &[Vec<i64>]) -> Result<SubsemigroupClass> {
    match zero_in_convex_hull(generators)? {
        ConeWitness::HalfSpace { normal } => Ok(SubsemigroupClass::InHalfSpace { normal }),
        ConeWitness::ZeroInHull { .. } => {
            let report = subgroup_index(generators)?;
            Ok(match report.index {
                SubgroupIndex::Finite(1) => SubsemigroupClass::Full,
                index => SubsemigroupClass::InProperSubgroup {
                    index,
                    rank: report.rank,
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Ratio<i64> {
        Ratio::from_integer(n)
    }

    #[test]
    fn hull_examples() {
        let q = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(
            zero_in_convex_hull(&q).unwrap(),
            ConeWitness::HalfSpace { normal: vec![1, 1] }
        );

        let tri = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        match zero_in_convex_hull(&tri).unwrap() {
            ConeWitness::ZeroInHull { coefficients, .. } => {
                assert_eq!(coefficients, vec![r(1), r(1), r(1)])
            }
            w => panic!("{w}"),
        }

        let line = vec![vec![2], vec![-3]];
        match zero_in_convex_hull(&line).unwrap() {
            ConeWitness::ZeroInHull {
                points,
                coefficients,
            } => {
                assert_eq!(points, line);
                assert_eq!(coefficients, vec![r(3), r(2)]);
            }
            w => panic!("{w}"),
        }
        assert!(zero_in_convex_hull(&[]).is_err());
    }

    #[test]
    fn square_needs_more_than_a_simplex() {
        let sq = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let w = zero_in_convex_hull(&sq).unwrap();
        match &w {
            ConeWitness::ZeroInHull { points, .. } => assert_eq!(points.len(), 4),
            _ => panic!("{w}"),
        }
        assert!(w.verify(&sq));
        assert_eq!(classify_subsemigroup(&sq).unwrap(), SubsemigroupClass::Full);
    }

    #[test]
    fn boundary_sets_are_half_space_trapped() {
        let line = vec![vec![1, 0], vec![-1, 0]];
        match zero_in_convex_hull(&line).unwrap() {
            ConeWitness::HalfSpace { normal } => assert_eq!(dot(&normal, &[1, 0]), 0),
            w => panic!("{w}"),
        }
        let with_zero = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        assert!(matches!(
            zero_in_convex_hull(&with_zero).unwrap(),
            ConeWitness::HalfSpace { .. }
        ));
        let half_plane = vec![vec![1, 0], vec![-1, 0], vec![0, 1]];
        assert_eq!(
            zero_in_convex_hull(&half_plane).unwrap(),
            ConeWitness::HalfSpace { normal: vec![0, 1] }
        );
    }

    #[test]
    fn classification_examples() {
        let tri = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        assert_eq!(
            classify_subsemigroup(&tri).unwrap(),
            SubsemigroupClass::Full
        );
        let even = vec![vec![2, 0], vec![0, 2], vec![-2, -2]];
        assert_eq!(
            classify_subsemigroup(&even).unwrap(),
            SubsemigroupClass::InProperSubgroup {
                index: SubgroupIndex::Finite(4),
                rank: 2
            }
        );
        let q = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(
            classify_subsemigroup(&q).unwrap(),
            SubsemigroupClass::InHalfSpace { normal: vec![1, 1] }
        );
        assert_eq!(
            classify_subsemigroup(&q).unwrap().to_string(),
            "InHalfSpace (1,1)"
        );
    }

    #[test]
    fn three_dimensional_certificates() {
        let v = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
        ];
        let w = zero_in_convex_hull(&v).unwrap();
        assert!(matches!(w, ConeWitness::ZeroInHull { .. }));
        let cone = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]];
        let w = zero_in_convex_hull(&cone).unwrap();
        assert!(matches!(w, ConeWitness::HalfSpace { .. }), "{w}");
    }

    #[test]
    fn desk_scale_limits() {
        assert!(zero_in_convex_hull(&[vec![1; 7]]).is_err());
        assert!(zero_in_convex_hull(&vec![vec![1]; 65]).is_err());
    }
}
