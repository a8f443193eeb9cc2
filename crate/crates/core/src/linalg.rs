//! Small dense linear algebra: a row-major matrix and a Cholesky factor in
//! packed lower-triangular storage that can grow one row at a time.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

/// Lower Cholesky factor `L` of `A + jitter·I`, rows packed contiguously
/// (row `i` holds `i + 1` entries).
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky<T> {
    n: usize,
    packed: Vec<T>,
    jitter: T,
}

#[inline]
fn row_start(i: usize) -> usize {
    i * (i + 1) / 2
}

impl<T: Real> Cholesky<T> {
    pub fn empty(jitter: T) -> Self {
        Self { n: 0, packed: Vec::new(), jitter }
    }

    /// Factors `a + jitter·I`; `None` if a pivot is not strictly positive.
    pub fn factor(a: &Matrix<T>, jitter: T) -> Option<Self> {
        let n = a.rows();
        debug_assert_eq!(n, a.cols());
        let mut packed = vec![T::zero(); row_start(n)];
        for i in 0..n {
            let ri = row_start(i);
            for j in 0..=i {
                let rj = row_start(j);
                let mut s = a.get(i, j);
                for k in 0..j {
                    s = s - packed[ri + k] * packed[rj + k];
                }
                if i == j {
                    let d = s + jitter;
                    if !(d > T::zero()) || !d.is_finite() {
                        return None;
                    }
                    packed[ri + i] = d.sqrt();
                } else {
                    packed[ri + j] = s / packed[rj + j];
                }
            }
        }
        Some(Self { n, packed, jitter })
    }

    /// Factor of a positive *semi*-definite matrix: pivots within
    /// `tol · max diag` of zero become exact zeros (their column is
    /// dropped). Errors if a pivot is more negative than that.
    pub fn factor_semidefinite(a: &Matrix<T>, tol: T) -> Result<Self> {
        let n = a.rows();
        let scale = (0..n).map(|i| a.get(i, i).abs()).fold(T::zero(), T::max);
        let eps = tol * scale.max(T::min_positive_value());
        let mut packed = vec![T::zero(); row_start(n)];
        for i in 0..n {
            let ri = row_start(i);
            for j in 0..=i {
                let rj = row_start(j);
                let mut s = a.get(i, j);
                for k in 0..j {
                    s = s - packed[ri + k] * packed[rj + k];
                }
                if i == j {
                    if s < -eps {
                        return Err(Error::domain(format!(
                            "covariance matrix is not positive semi-definite (pivot {s:e})"
                        )));
                    }
                    packed[ri + i] = if s > eps { s.sqrt() } else { T::zero() };
                } else {
                    let d = packed[rj + j];
                    packed[ri + j] = if d > T::zero() { s / d } else { T::zero() };
                }
            }
        }
        Ok(Self { n, packed, jitter: T::zero() })
    }

    /// Factors with the jitter ladder `1e-12·scale, 1e-11·scale, …, 1e-6·scale`.
    pub fn factor_with_ladder(a: &Matrix<T>, scale: T) -> Result<Self> {
        let mut jitter = T::lit(1e-12) * scale;
        let top = T::lit(1e-6) * scale * T::lit(1.000_001);
        while jitter <= top {
            if let Some(ch) = Self::factor(a, jitter) {
                return Ok(ch);
            }
            jitter = jitter * T::lit(10.0);
        }
        Err(Error::SingularModel { jitter: (T::lit(1e-6) * scale).to_f64_lossy() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn jitter(&self) -> T {
        self.jitter
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.packed[row_start(i)..row_start(i + 1)]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        if j > i {
            T::zero()
        } else {
            self.packed[row_start(i) + j]
        }
    }

    /// Appends one row/column: `cross` is the new column of `A` above the
    /// diagonal, `diag` the new diagonal entry (jitter is added here).
    /// Returns `None` when the new pivot is not strictly positive.
    pub fn extend(&self, cross: &[T], diag: T) -> Option<Self> {
        debug_assert_eq!(cross.len(), self.n);
        let l = self.solve_lower(cross);
        // same operation order as `factor`, so both give identical rows
        let d = l.iter().fold(diag, |s, &v| s - v * v) + self.jitter;
        if !(d > T::zero()) || !d.is_finite() {
            return None;
        }
        let mut packed = Vec::with_capacity(row_start(self.n + 2));
        packed.extend_from_slice(&self.packed);
        packed.extend_from_slice(&l);
        packed.push(d.sqrt());
        Some(Self { n: self.n + 1, packed, jitter: self.jitter })
    }

    /// Solves `L x = b`.
    pub fn solve_lower(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        for i in 0..self.n {
            let r = self.row(i);
            let mut s = x[i];
            for k in 0..i {
                s = s - r[k] * x[k];
            }
            x[i] = s / r[i];
        }
        x
    }

    /// Solves `Lᵀ x = b`.
    pub fn solve_upper_transposed(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        for i in (0..self.n).rev() {
            let xi = x[i] / self.get(i, i);
            x[i] = xi;
            let r = self.row(i);
            for k in 0..i {
                x[k] = x[k] - r[k] * xi;
            }
        }
        x
    }

    /// Solves `(L Lᵀ) x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        self.solve_upper_transposed(&self.solve_lower(b))
    }

    /// Solves `L X = B` for a row-major `B` with `n` rows, in place.
    pub fn solve_lower_matrix(&self, b: &mut Matrix<T>) {
        debug_assert_eq!(b.rows(), self.n);
        let cols = b.cols();
        let mut acc = vec![T::zero(); cols];
        for i in 0..self.n {
            acc.copy_from_slice(b.row(i));
            let r = self.row(i);
            for k in 0..i {
                let lik = r[k];
                if lik == T::zero() {
                    continue;
                }
                let xk = b.row(k);
                for (a, &x) in acc.iter_mut().zip(xk) {
                    *a = *a - lik * x;
                }
            }
            let inv = T::one() / r[i];
            for (dst, &a) in b.row_mut(i).iter_mut().zip(&acc) {
                *dst = a * inv;
            }
        }
    }

    /// `L z` for a vector `z` of length `n`.
    pub fn mul_vec(&self, z: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(z).fold(T::zero(), |s, (&l, &v)| s + l * v))
            .collect()
    }
}
