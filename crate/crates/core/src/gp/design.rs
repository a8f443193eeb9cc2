use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ordered list of points in ℝ^d, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Design<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Real> Design<T> {
    pub fn empty(dim: usize) -> Self {
        Self { dim, coords: Vec::new() }
    }

    pub fn from_points<P: AsRef<[T]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut d = Self::empty(dim);
        for p in points {
            d.push(p.as_ref())?;
        }
        Ok(d)
    }

    pub fn from_flat(dim: usize, coords: Vec<T>) -> Result<Self> {
        if dim == 0 || coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch { expected: dim, found: coords.len() });
        }
        Ok(Self { dim, coords })
    }

    pub fn push(&mut self, p: &[T]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.len() });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("design point has non-finite coordinates"));
        }
        self.coords.extend_from_slice(p);
        Ok(())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.coords.len() / self.dim
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// Index of the first point exactly equal to `p`.
    pub fn position(&self, p: &[T]) -> Option<usize> {
        self.iter().position(|q| q == p)
    }

    /// Index of the first repeated point, if any.
    pub fn first_duplicate(&self) -> Option<usize> {
        (1..self.len()).find(|&j| (0..j).any(|i| self.point(i) == self.point(j)))
    }
}
