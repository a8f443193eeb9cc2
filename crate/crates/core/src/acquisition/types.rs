use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gp::{Design, GpPosterior};
use crate::scalar::Real;

/// Current best observed value Mₙ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Threshold<T>(pub T);

impl<T: Real> Threshold<T> {
    pub fn new(m_n: T) -> Self {
        Self(m_n)
    }

    /// Mₙ of a posterior; `None` when nothing has been observed yet.
    pub fn from_posterior(post: &GpPosterior<T>) -> Option<Self> {
        post.best_value().map(Self)
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// Finite point set carrying a uniform share of a measure: each point has
/// weight `total_measure / len`. Serves both as the integration sample and
/// as the search set.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet<T> {
    points: Design<T>,
    total_measure: T,
}

impl<T: Real> CandidateSet<T> {
    pub fn new(points: Design<T>, total_measure: T) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        if !(total_measure > T::zero()) || !total_measure.is_finite() {
            return Err(Error::domain(format!("total measure must be positive, got {total_measure}")));
        }
        Ok(Self { points, total_measure })
    }

    /// `m` points drawn uniformly in the box `[lower, upper]`, weighted by
    /// the box volume.
    pub fn uniform_random(lower: &[T], upper: &[T], m: usize, seed: u64) -> Result<Self> {
        let volume = box_volume(lower, upper)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = Design::empty(lower.len());
        let mut p = vec![T::zero(); lower.len()];
        for _ in 0..m {
            for (k, x) in p.iter_mut().enumerate() {
                let u: f64 = rng.random();
                *x = lower[k] + (upper[k] - lower[k]) * T::lit(u);
            }
            d.push(&p)?;
        }
        Self::new(d, volume)
    }

    /// Regular grid with `per_axis` points per coordinate (endpoints
    /// included when `per_axis ≥ 2`, cell midpoint otherwise), in
    /// lexicographic order with the last coordinate varying fastest.
    pub fn regular_grid(lower: &[T], upper: &[T], per_axis: usize) -> Result<Self> {
        let volume = box_volume(lower, upper)?;
        if per_axis == 0 {
            return Err(Error::EmptyCandidates);
        }
        let dim = lower.len();
        let axis = |k: usize, i: usize| {
            if per_axis == 1 {
                (lower[k] + upper[k]) * T::lit(0.5)
            } else {
                lower[k] + (upper[k] - lower[k]) * T::from_usize_lossy(i) / T::from_usize_lossy(per_axis - 1)
            }
        };
        let total = per_axis.checked_pow(dim as u32).ok_or_else(|| Error::config("grid too large"))?;
        let mut d = Design::empty(dim);
        let mut p = vec![T::zero(); dim];
        for flat in 0..total {
            let mut rem = flat;
            for k in (0..dim).rev() {
                p[k] = axis(k, rem % per_axis);
                rem /= per_axis;
            }
            d.push(&p)?;
        }
        Self::new(d, volume)
    }

    #[inline]
    pub fn points(&self) -> &Design<T> {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn total_measure(&self) -> T {
        self.total_measure
    }

    #[inline]
    pub fn weight(&self) -> T {
        self.total_measure / T::from_usize_lossy(self.len())
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[T] {
        self.points.point(i)
    }

    /// Index of the point nearest to `x` (lowest index on ties).
    pub fn nearest(&self, x: &[T]) -> usize {
        let mut best = (0, T::infinity());
        for (i, p) in self.points.iter().enumerate() {
            let d2 = p.iter().zip(x).fold(T::zero(), |s, (&a, &b)| s + (a - b) * (a - b));
            if d2 < best.1 {
                best = (i, d2);
            }
        }
        best.0
    }
}

pub(crate) fn box_volume<T: Real>(lower: &[T], upper: &[T]) -> Result<T> {
    if lower.is_empty() || lower.len() != upper.len() {
        return Err(Error::DimensionMismatch { expected: lower.len(), found: upper.len() });
    }
    let mut v = T::one();
    for (&a, &b) in lower.iter().zip(upper) {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!("empty or unbounded interval [{a}, {b}]")));
        }
        v = v * (b - a);
    }
    Ok(v)
}

/// Bivariate normal law, e.g. the joint posterior of (ξ(x), ξ(y)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian2<T> {
    pub mean: [T; 2],
    pub cov: [[T; 2]; 2],
}

impl<T: Real> Gaussian2<T> {
    /// Checks symmetry, non-negative variances and `det ≥ −1e-10` (relative
    /// to the variance scale).
    pub fn new(mean: [T; 2], cov: [[T; 2]; 2]) -> Result<Self> {
        if mean.iter().chain(cov.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::domain("bivariate law has non-finite entries"));
        }
        let scale = cov[0][0].abs().max(cov[1][1].abs()).max(T::min_positive_value());
        let tol = T::lit(1e-10);
        if (cov[0][1] - cov[1][0]).abs() > tol * scale {
            return Err(Error::domain("bivariate covariance is not symmetric"));
        }
        if cov[0][0] < T::zero() || cov[1][1] < T::zero() {
            return Err(Error::domain("negative variance"));
        }
        let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
        if det < -tol * scale * scale {
            return Err(Error::domain(format!("bivariate covariance is not PSD (det {det:e})")));
        }
        Ok(Self { mean, cov })
    }

    /// Law with the two components exchanged.
    pub fn swapped(self) -> Self {
        Self {
            mean: [self.mean[1], self.mean[0]],
            cov: [[self.cov[1][1], self.cov[1][0]], [self.cov[0][1], self.cov[0][0]]],
        }
    }
}
