//! Dense matrices and Gaussian elimination over GF(2^b).

use super::{Field, Gf};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

/// Result of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Gf>),
    Inconsistent,
    /// Consistent, with `nullity` free variables; `particular` sets them to zero.
    Underdetermined {
        particular: Vec<Gf>,
        nullity: usize,
    },
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Gf::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gf::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> Gf) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, g(r, c));
            }
        }
        m
    }

    /// Vandermonde matrix with row h, column j equal to `points[j]^h`.
    pub fn vandermonde(rows: usize, points: &[Gf], f: &Field) -> Matrix {
        Matrix::from_fn(rows, points.len(), |h, j| f.pow(points[j], h as u64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Gf) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Gf] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Gf], f: &Field) -> Vec<Gf> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| f.mul(a, b)).sum())
            .collect()
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols)
                .map(|k| f.mul(self.get(r, k), other.get(k, c)))
                .sum()
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Row-reduce in place; returns pivot columns.
    fn eliminate(&mut self, f: &Field, pivot_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c) - f.mul(factor, self.get(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        m.eliminate(f, self.cols).len()
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Domain("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c)
            } else if c - n == r {
                Gf::ONE
            } else {
                Gf::ZERO
            }
        });
        if aug.eliminate(f, n).len() < n {
            return Err(Error::Domain("singular matrix".into()));
        }
        Ok(Matrix::from_fn(n, n, |r, c| aug.get(r, c + n)))
    }

    /// Solve `self · x = b` by Gauss-Jordan elimination.
    pub fn solve(&self, b: &[Gf], f: &Field) -> Solution {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let n = self.cols;
        let mut aug = Matrix::from_fn(
            self.rows,
            n + 1,
            |r, c| {
                if c < n {
                    self.get(r, c)
                } else {
                    b[r]
                }
            },
        );
        let pivots = aug.eliminate(f, n);
        if (pivots.len()..self.rows).any(|r| !aug.get(r, n).is_zero()) {
            return Solution::Inconsistent;
        }
        let mut x = vec![Gf::ZERO; n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, n);
        }
        if pivots.len() == n {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined {
                particular: x,
                nullity: n - pivots.len(),
            }
        }
    }

    /// Basis of the right null space.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Gf>> {
        let mut m = self.clone();
        let pivots = m.eliminate(f, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Gf::ZERO; self.cols];
                v[fc] = Gf::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = Gf::ZERO - m.get(r, fc);
                }
                v
            })
            .collect()
    }
}
