//! Expected expected improvement (EEI), its integral ℵₙ over a candidate
//! set (the EIEI criterion) and the current integrated EI H′ₙ.
//!
//! `EEIₙ(y; x) = EI_{n,2}(x, y) − EIₙ(x)`: the future EI at `y` once `x`
//! has been evaluated, averaged over the unknown outcome at `x`.

use rayon::prelude::*;

use crate::acquisition::closed_form::{ei, two_point};
use crate::acquisition::{CandidateSet, Threshold};
use crate::error::{Error, Result};
use crate::gp::{Design, GpPosterior};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// Standard deviations below this fraction of the prior σ are zero.
const SD_FLOOR: f64 = 1e-9;

fn sd_floor<T: Real>(post: &GpPosterior<T>) -> T {
    T::lit(SD_FLOOR) * post.kernel().sigma2().sqrt()
}

/// Joint posterior law over a fixed point set, with everything needed to
/// evaluate EI, EEI and ℵₙ for any pair of its points.
#[derive(Debug, Clone)]
pub struct CandidateLaw<T> {
    mean: Vec<T>,
    cov: Matrix<T>,
    sd: Vec<T>,
    ei: Vec<T>,
    threshold: T,
    floor: T,
    weight: T,
}

impl<T: Real> CandidateLaw<T> {
    /// Posterior law of `post` over `cand` with threshold `t`.
    pub fn new(post: &GpPosterior<T>, t: Threshold<T>, cand: &CandidateSet<T>) -> Result<Self> {
        let (mean, cov) = post.posterior_mean_cov(cand.points())?;
        Ok(Self::from_moments(mean, cov, t, sd_floor(post), cand.weight()))
    }

    /// As [`Self::new`] with a cached prior covariance of the candidates.
    pub fn with_prior(post: &GpPosterior<T>, t: Threshold<T>, cand: &CandidateSet<T>, prior: &Matrix<T>) -> Self {
        let (mean, cov) = post.mean_cov_with_prior(cand.points(), prior);
        Self::from_moments(mean, cov, t, sd_floor(post), cand.weight())
    }

    pub fn from_moments(mean: Vec<T>, cov: Matrix<T>, t: Threshold<T>, floor: T, weight: T) -> Self {
        let t = t.get();
        let sd: Vec<T> = (0..mean.len()).map(|i| cov.get(i, i).max(T::zero()).sqrt()).collect();
        let ei = mean.iter().zip(&sd).map(|(&m, &s)| ei(m, s, t, floor)).collect();
        Self { mean, cov, sd, ei, threshold: t, floor, weight }
    }

    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }

    pub fn mean(&self, i: usize) -> T {
        self.mean[i]
    }

    pub fn sd(&self, i: usize) -> T {
        self.sd[i]
    }

    pub fn ei(&self, i: usize) -> T {
        self.ei[i]
    }

    /// `EEIₙ(y_j; x_i)`, clipped at zero.
    #[inline]
    pub fn eei(&self, i: usize, j: usize) -> T {
        let c = &self.cov;
        let two = two_point(self.mean[i], self.mean[j], c.get(i, i), c.get(i, j), c.get(j, j), self.threshold, self.floor);
        (two - self.ei[i]).max(T::zero())
    }

    /// `ℵₙ(x_i) ≈ (λ(𝕏)/m) Σ_j EEIₙ(y_j; x_i)` over the whole set.
    pub fn eiei(&self, i: usize) -> T {
        let mut acc = T::zero();
        for j in 0..self.len() {
            acc = acc + self.eei(i, j);
        }
        acc * self.weight
    }

    /// ℵₙ at `i` with the sum restricted to points `skip..len`.
    fn eiei_tail(&self, i: usize, skip: usize) -> T {
        let mut acc = T::zero();
        for j in skip..self.len() {
            acc = acc + self.eei(i, j);
        }
        acc * self.weight
    }

    /// `H′ₙ ≈ (λ(𝕏)/m) Σ_j EIₙ(y_j)`.
    pub fn integrated_ei(&self) -> T {
        self.ei.iter().copied().sum::<T>() * self.weight
    }

    /// ℵₙ at every index in `indices`, evaluated in parallel; output order
    /// follows `indices`.
    pub fn eiei_many(&self, indices: &[usize]) -> Vec<T> {
        indices.par_iter().map(|&i| self.eiei(i)).collect()
    }
}

/// `EEIₙ(y; x_next)`.
pub fn eei<T: Real>(post: &GpPosterior<T>, t: Threshold<T>, x_next: &[T], y: &[T]) -> Result<T> {
    let targets = Design::from_points(post.dim(), &[x_next, y])?;
    let (mean, cov) = post.posterior_mean_cov(&targets)?;
    let law = CandidateLaw::from_moments(mean, cov, t, sd_floor(post), T::one());
    Ok(law.eei(0, 1))
}

/// `ℵₙ(x_next)` with the integral replaced by the weighted sum over `cand`.
pub fn eiei<T: Real>(post: &GpPosterior<T>, t: Threshold<T>, x_next: &[T], cand: &CandidateSet<T>) -> Result<T> {
    if cand.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut targets = Design::empty(post.dim());
    targets.push(x_next)?;
    for p in cand.points().iter() {
        targets.push(p)?;
    }
    let (mean, cov) = post.posterior_mean_cov(&targets)?;
    let law = CandidateLaw::from_moments(mean, cov, t, sd_floor(post), cand.weight());
    Ok(law.eiei_tail(0, 1))
}

/// `H′ₙ = ∫ EIₙ(y) λ(dy)`, approximated on `cand`.
pub fn integrated_ei<T: Real>(post: &GpPosterior<T>, t: Threshold<T>, cand: &CandidateSet<T>) -> Result<T> {
    if cand.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let targets = cand.points();
    if targets.dim() != post.dim() {
        return Err(Error::DimensionMismatch { expected: post.dim(), found: targets.dim() });
    }
    // only marginal variances are needed
    let floor = sd_floor(post);
    let mut total = T::zero();
    for p in targets.iter() {
        let (m, v) = post.mean_var(p)?;
        total = total + ei(m, v.max(T::zero()).sqrt(), t.get(), floor);
    }
    Ok(total * cand.weight())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::MaternKernel;
    use crate::special_math::MaternSmoothness;

    fn posterior() -> GpPosterior<f64> {
        let k = MaternKernel::new(1.0, 0.3, MaternSmoothness::new(2.5).unwrap()).unwrap();
        let d = Design::from_points(1, &[[0.1], [0.5], [0.85]]).unwrap();
        GpPosterior::condition(k, d, vec![0.2, 0.9, -0.3]).unwrap()
    }

    #[test]
    fn eei_at_probe_point_vanishes() {
        let post = posterior();
        let t = Threshold::from_posterior(&post).unwrap();
        for x in [0.0, 0.3, 0.62, 0.99] {
            assert!(eei(&post, t, &[x], &[x]).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn eei_at_observed_point_vanishes() {
        let post = posterior();
        let t = Threshold::from_posterior(&post).unwrap();
        for y in [0.1, 0.5, 0.85] {
            assert_eq!(eei(&post, t, &[0.3], &[y]).unwrap(), 0.0);
        }
    }

    #[test]
    fn eei_matches_quadrature_oracle() {
        // 50-digit quadrature over ξ(x_next), tests/oracles/generate.py
        let post = posterior();
        let t = Threshold::from_posterior(&post).unwrap();
        let v = eei(&post, t, &[0.3], &[0.7]).unwrap();
        assert!((v - 0.028_366_701_867_019_501).abs() < 1e-9, "{v}");
    }

    #[test]
    fn integrated_ei_of_prior_single_point() {
        let k = MaternKernel::new(1.0, 0.3, MaternSmoothness::new(2.5).unwrap()).unwrap();
        let post = GpPosterior::prior(k, 1);
        let cand = CandidateSet::new(Design::from_points(1, &[[0.4]]).unwrap(), 1.0).unwrap();
        let h: f64 = integrated_ei(&post, Threshold(0.0), &cand).unwrap();
        assert!((h - 0.398_942_280_4).abs() < 1e-10);
    }

    #[test]
    fn single_candidate_eiei_is_weighted_eei() {
        let post = posterior();
        let t = Threshold::from_posterior(&post).unwrap();
        let cand = CandidateSet::new(Design::from_points(1, &[[0.7]]).unwrap(), 2.5).unwrap();
        let a = eiei(&post, t, &[0.3], &cand).unwrap();
        let b = 2.5 * eei(&post, t, &[0.3], &[0.7]).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn law_and_free_functions_agree() {
        let post = posterior();
        let t = Threshold::from_posterior(&post).unwrap();
        let cand = CandidateSet::regular_grid(&[0.0], &[1.0], 21).unwrap();
        let law = CandidateLaw::new(&post, t, &cand).unwrap();
        let h = integrated_ei(&post, t, &cand).unwrap();
        assert!((law.integrated_ei() - h).abs() < 1e-12);
        for i in [0, 4, 13, 20] {
            let direct = eiei(&post, t, cand.point(i), &cand).unwrap();
            assert!((law.eiei(i) - direct).abs() < 1e-12);
            assert!(law.eiei(i) <= h + 1e-9);
        }
        assert!(matches!(
            CandidateSet::new(Design::<f64>::empty(1), 1.0),
            Err(Error::EmptyCandidates)
        ));
    }
}
