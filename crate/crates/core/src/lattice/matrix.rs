use std::fmt;
use std::ops::{Index, IndexMut, Mul};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().map(|&x| x as i128));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += factor * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: i128) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += factor * v;
        }
    }

    /// `col[dst] += factor * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: i128) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += factor * v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[(k, k)] == 0 {
                match (k + 1..n).find(|&i| m[(i, k)] != 0) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[(i, j)] = (m[(i, j)] * m[(k, k)] - m[(i, k)] * m[(k, j)]) / prev;
                }
            }
            prev = m[(k, k)];
        }
        sign * m[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        // fraction-free row echelon
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&i| m[(i, col)] != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            for i in rank + 1..m.rows {
                let (a, b) = (m[(rank, col)], m[(i, col)]);
                if b != 0 {
                    for j in 0..m.cols {
                        m[(i, j)] = a * m[(i, j)] - b * m[(rank, j)];
                    }
                    let g = m.row(i).iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                    if g > 1 {
                        for j in 0..m.cols {
                            m[(i, j)] /= g;
                        }
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i128;

    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Whitespace-separated rows, one per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let m = IntMatrix::from_rows(&[[2i64, 0], [0, 3]]);
        assert_eq!(m.determinant(), 6);
        let m = IntMatrix::from_rows(&[[0i64, 1], [1, 0]]);
        assert_eq!(m.determinant(), -1);
        let m = IntMatrix::from_rows(&[[1i64, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(m.determinant(), -3);
        let m = IntMatrix::from_rows(&[[2i64, 4], [1, 2]]);
        assert_eq!(m.determinant(), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(IntMatrix::from_rows(&[[2i64, 4], [1, 2]]).rank(), 1);
        assert_eq!(IntMatrix::from_rows(&[[1i64, 0], [0, 1], [1, 1]]).rank(), 2);
        assert_eq!(IntMatrix::from_rows(&[[0i64, 0]]).rank(), 0);
        assert_eq!(
            IntMatrix::from_rows(&[[0i64, 1, 2], [0, 2, 4], [1, 0, 0]]).rank(),
            2
        );
    }

    #[test]
    fn products() {
        let a = IntMatrix::from_rows(&[[1i64, 2], [3, 4]]);
        let b = IntMatrix::from_rows(&[[0i64, 1], [1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[[2i64, 1], [4, 3]]));
        assert_eq!(&a * &IntMatrix::identity(2), a);
    }
}
