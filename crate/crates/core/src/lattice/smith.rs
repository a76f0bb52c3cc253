use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// `D = U A V` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d[(i, j)];
                    if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < d[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(u, v, d);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)] / p;
                if q != 0 {
                    d.add_row_multiple(i, t, -q);
                    u.add_row_multiple(i, t, -q);
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = d[(t, j)] / p;
                if q != 0 {
                    d.add_col_multiple(j, t, -q);
                    v.add_col_multiple(j, t, -q);
                }
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, v, d)
}

fn finish(u: IntMatrix, v: IntMatrix, d: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { u, v, d }
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }

    /// Checks `U A V = D`, unimodularity, diagonal shape and the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let product = &(&self.u * a) * &self.v;
        if product != self.d {
            return false;
        }
        if self.u.determinant().abs() != 1 || self.v.determinant().abs() != 1 {
            return false;
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && self.d[(i, j)] != 0 {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|&x| x < 0) {
            return false;
        }
        diag.windows(2).all(|w| match (w[0], w[1]) {
            (0, b) => b == 0,
            (a, b) => b % a == 0,
        })
    }
}

/// Index of a subgroup of `Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupIndex {
    Finite(u128),
    Infinite,
}

impl fmt::Display for SubgroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupIndex::Finite(n) => write!(f, "{n}"),
            SubgroupIndex::Infinite => f.write_str("infinite"),
        }
    }
}

/// The subgroup of `Z^d` generated by a list of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasisReport {
    pub vectors: Vec<Vec<i64>>,
    pub dimension: usize,
    pub rank: usize,
    pub index: SubgroupIndex,
    pub smith_diagonal: Vec<u64>,
    decomposition: SmithDecomposition,
}

impl LatticeBasisReport {
    pub fn decomposition(&self) -> &SmithDecomposition {
        &self.decomposition
    }

    /// Whether `v` lies in the generated subgroup.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dimension {
            return false;
        }
        // v = y A  <=>  v V = z D  for an integer row vector z
        let row = IntMatrix::from_rows(&[v]);
        let image = &row * &self.decomposition.v;
        let diag = self.decomposition.diagonal();
        (0..self.dimension).all(|j| {
            let x = image[(0, j)];
            match diag.get(j) {
                Some(&s) if s != 0 => x % s == 0,
                _ => x == 0,
            }
        })
    }
}

pub(crate) fn check_vectors(vectors: &[Vec<i64>]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyInput("no vectors"))?;
    let d = first.len();
    if d == 0 {
        return Err(Error::InvalidArgument(
            "vectors must have positive dimension".into(),
        ));
    }
    if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
        return Err(Error::InvalidArgument(format!(
            "vector {bad:?} does not have dimension {d}"
        )));
    }
    Ok(d)
}

pub fn subgroup_index(vectors: &[Vec<i64>]) -> Result<LatticeBasisReport> {
    let dimension = check_vectors(vectors)?;
    let a = IntMatrix::from_rows(vectors);
    let decomposition = smith_normal_form(&a);
    debug_assert!(decomposition.verify(&a));
    let diag = decomposition.diagonal();
    let rank = diag.iter().filter(|&&x| x != 0).count();
    let index = if rank == dimension {
        SubgroupIndex::Finite(diag.iter().map(|&x| x as u128).product())
    } else {
        SubgroupIndex::Infinite
    };
    Ok(LatticeBasisReport {
        vectors: vectors.to_vec(),
        dimension,
        rank,
        index,
        smith_diagonal: diag.iter().map(|&x| x as u64).collect(),
        decomposition,
    })
}
