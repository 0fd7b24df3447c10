//! Small dense complex matrices: products, rank and linear solves.

use crate::error::{Error, Result};
use crate::scalar::{is_zero, modulus, one, within, zero, Real, C};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C<T>) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    /// Columns given as vectors of equal length.
    pub fn from_columns(columns: &[Vec<C<T>>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch("ragged columns".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C<T> {
        self.data[r * self.cols + c].clone()
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C<T>) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<C<T>> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if is_zero(&a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a.clone() * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("matrix-vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).fold(zero(), |acc, c| acc + self.get(r, c) * v[c].clone()))
            .collect())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Largest entrywise modulus of `self - other`, with the first position
    /// exceeding `tol`.
    pub fn max_diff(&self, other: &Self, tol: &T) -> Result<(f64, Option<(usize, usize)>)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix comparison".into()));
        }
        let mut worst = 0.0f64;
        let mut first = None;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let d = self.get(r, c) - other.get(r, c);
                worst = worst.max(modulus(&d));
                if first.is_none() && !within(&d, tol) {
                    first = Some((r, c));
                }
            }
        }
        Ok((worst, first))
    }

    /// Row reduction with largest-modulus pivoting; entries within `tol`
    /// of zero are treated as zero. Returns the pivot columns.
    fn reduce(&mut self, tol: &T) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let best = (row..self.rows)
                .max_by(|&a, &b| {
                    self.get(a, col)
                        .norm_sqr()
                        .partial_cmp(&self.get(b, col).norm_sqr())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty range");
            let p = self.get(best, col);
            if within(&p, tol) {
                continue;
            }
            if best != row {
                for c in 0..self.cols {
                    self.data.swap(best * self.cols + c, row * self.cols + c);
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col) / p.clone();
                if is_zero(&f) {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c) - f.clone() * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: &T) -> usize {
        self.clone().reduce(tol).len()
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[C<T>], tol: &T) -> Result<Vec<C<T>>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::ShapeMismatch("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(
            n,
            n + 1,
            |r, c| {
                if c < n {
                    self.get(r, c)
                } else {
                    b[r].clone()
                }
            },
        );
        let pivots = aug.reduce(tol);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularSystem(format!(
                "rank {} of {n}",
                pivots.len().min(n)
            )));
        }
        Ok((0..n).map(|r| aug.get(r, n) / aug.get(r, r)).collect())
    }

    pub fn inverse(&self, tol: &T) -> Result<Self> {
        let n = self.rows;
        let cols = (0..n)
            .map(|c| {
                let e: Vec<C<T>> = (0..n)
                    .map(|r| if r == c { one() } else { zero() })
                    .collect();
                self.solve(&e, tol)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(&cols)
    }
}
