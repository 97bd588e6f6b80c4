//! Small dense matrices over a [`Scalar`] field with Gaussian elimination.
//!
//! Exact scalars (ℚ, ℚ(√2)) eliminate with true zero tests, so rank,
//! solve and inverse are certificates, not approximations. The float
//! instantiation uses partial pivoting with a relative tolerance and is
//! only a convenience.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: Vec<Vec<S>>) -> Self {
        Mat::from_rows(cols).transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out: Mat<S> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.iter())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs_f64()).fold(0.0, f64::max)
    }

    /// Row echelon reduction in place; returns pivot column indices.
    /// Pivots are chosen by maximal magnitude within the column block,
    /// which is a no-op refinement for exact scalars.
    fn row_reduce(&mut self) -> Vec<usize> {
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            // best pivot in column j at or below row r
            let mut best = r;
            for i in r..self.rows {
                if self[(i, j)].abs_f64() > self[(best, j)].abs_f64() {
                    best = i;
                }
            }
            if self[(best, j)].is_negligible(scale) {
                continue;
            }
            self.swap_rows(r, best);
            let inv = S::one() / self[(r, j)].clone();
            for jj in j..self.cols {
                self[(r, jj)] = self[(r, jj)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, j)].is_zero() {
                    let f = self[(i, j)].clone();
                    for jj in j..self.cols {
                        let delta = f.clone() * self[(r, jj)].clone();
                        self[(i, jj)] = self[(i, jj)].clone() - delta;
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// One solution of `self · x = rhs` (free variables set to zero), or
    /// `None` when the system is inconsistent. Unique when the matrix has
    /// full column rank.
    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let pivots = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // pivot in the rhs column: inconsistent
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &j) in pivots.iter().enumerate() {
            x[j] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = S::one();
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots.iter().any(|&j| j >= n) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let scale = self.max_abs();
        let mut m = self.clone();
        let n = m.rows;
        let mut det = S::one();
        for j in 0..n {
            let mut best = j;
            for i in j..n {
                if m[(i, j)].abs_f64() > m[(best, j)].abs_f64() {
                    best = i;
                }
            }
            if m[(best, j)].is_negligible(scale) {
                return S::zero();
            }
            if best != j {
                m.swap_rows(j, best);
                det = -det;
            }
            let pivot = m[(j, j)].clone();
            det = det * pivot.clone();
            for i in (j + 1)..n {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let f = m[(i, j)].clone() / pivot.clone();
                for jj in j..n {
                    let delta = f.clone() * m[(j, jj)].clone();
                    m[(i, jj)] = m[(i, jj)].clone() - delta;
                }
            }
        }
        det
    }

    /// Minimum-Euclidean-norm solution of an underdetermined full-row-rank
    /// system: x = Aᵀ(AAᵀ)⁻¹b, evaluated exactly over the field.
    pub fn min_norm_solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, rhs.len());
        let at = self.transpose();
        let gram = self.matmul(&at);
        let inv = gram.inverse()?;
        Some(at.matvec(&inv.matvec(rhs)))
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
