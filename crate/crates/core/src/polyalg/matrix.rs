//! Dense matrices over an exact scalar field, with Gaussian elimination.

use num_traits::{One, Zero};

use super::coeff::{Rational, Scalar};
use super::poly::Polynomial;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<C: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

pub type RatMat = Mat<Rational>;

impl<C: Scalar> Mat<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).clone() + a.clone() * other.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = C::zero();
                for c in 0..self.cols {
                    acc = acc + self.get(r, c).clone() * v[c].clone();
                }
                acc
            })
            .collect()
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn trace(&self) -> C {
        assert_eq!(self.rows, self.cols);
        let mut acc = C::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    pub fn det(&self) -> C {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = C::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return C::zero();
            };
            if pivot != col {
                for c in 0..n {
                    let a = m.get(pivot, c).clone();
                    let b = m.get(col, c).clone();
                    m.set(pivot, c, b);
                    m.set(col, c, a);
                }
                det = -det;
            }
            let p = m.get(col, col).clone();
            det = det * p.clone();
            for r in col + 1..n {
                let f = m.get(r, col).clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Solve `self · x = b` by exact Gaussian elimination. Pivot columns are
    /// taken left to right (first nonzero entry), and every free variable is
    /// set to zero, so the solution is deterministic and concentrates its
    /// support on the earliest columns. Returns `None` when inconsistent.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows, "matrix/rhs shape mismatch");
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != rank {
                for c in 0..self.cols {
                    let a = m.get(pr, c).clone();
                    let bb = m.get(rank, c).clone();
                    m.set(pr, c, bb);
                    m.set(rank, c, a);
                }
                rhs.swap(pr, rank);
            }
            let p = m.get(rank, col).clone();
            for c in col..self.cols {
                let v = m.get(rank, c).clone() / p.clone();
                m.set(rank, c, v);
            }
            rhs[rank] = rhs[rank].clone() / p;
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = m.get(r, c).clone() - f.clone() * m.get(rank, c).clone();
                    m.set(r, c, v);
                }
                rhs[r] = rhs[r].clone() - f * rhs[rank].clone();
            }
            pivot_cols.push((rank, col));
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        // Consistency: zero rows must carry zero right-hand sides.
        for r in rank..self.rows {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, c) in pivot_cols {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }

    /// Interpret the matrix as a linear polynomial map in `cols` variables.
    pub fn as_linear_map(&self) -> Vec<Polynomial<C>> {
        (0..self.rows)
            .map(|r| {
                let mut p = Polynomial::zero(self.cols);
                for c in 0..self.cols {
                    let v = self.get(r, c);
                    if !v.is_zero() {
                        p.insert_add(super::monomial::Monomial::unit(self.cols, c), v.clone());
                    }
                }
                p
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::{rat, rat_int};

    #[test]
    fn determinant_and_product() {
        let a = Mat::from_rows(vec![
            vec![rat_int(0), rat_int(-2)],
            vec![rat_int(2), rat_int(0)],
        ]);
        assert_eq!(a.det(), rat_int(4));
        let sq = a.matmul(&a);
        assert_eq!(*sq.get(0, 0), rat_int(-4));
        assert!(sq.get(0, 1).is_zero());
    }

    #[test]
    fn solve_prefers_early_columns() {
        // x + y = 3 with free y: y is set to zero.
        let a = Mat::from_rows(vec![vec![rat_int(1), rat_int(1)]]);
        let x = a.solve(&[rat_int(3)]).unwrap();
        assert_eq!(x, vec![rat_int(3), rat_int(0)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert!(a.solve(&[rat_int(1), rat_int(3)]).is_none());
        assert!(a.solve(&[rat_int(1), rat_int(2)]).is_some());
    }

    #[test]
    fn solve_full_rank() {
        let a = Mat::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ]);
        let x = a.solve(&[rat_int(4), rat(1, 2)]).unwrap();
        // 2x + y = 4, x − y = 1/2  →  x = 3/2, y = 1
        assert_eq!(x, vec![rat(3, 2), rat_int(1)]);
    }
}
