use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::acquisition::Threshold;
use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix};
use crate::scalar::Real;

/// Monte Carlo estimate of the r-point EI `𝔼[(max_k Y_k − t)₊]` for
/// `Y ~ N(means, cov)`, with its standard error.
///
/// Deterministic for a given seed. `cov` may be singular but must be PSD
/// up to a relative tolerance of 1e-10.
pub fn multi_point_ei_mc<T: Real>(
    means: &[T],
    cov: &Matrix<T>,
    t: Threshold<T>,
    n_samples: usize,
    seed: u64,
) -> Result<(T, T)> {
    let r = means.len();
    if r == 0 {
        return Err(Error::domain("multi_point_ei_mc: empty mean vector"));
    }
    if cov.rows() != r || cov.cols() != r {
        return Err(Error::DimensionMismatch { expected: r, found: cov.rows() });
    }
    if n_samples == 0 {
        return Err(Error::domain("multi_point_ei_mc: need at least one sample"));
    }
    for i in 0..r {
        for j in 0..i {
            let scale = cov.get(i, i).abs().max(cov.get(j, j).abs()).max(T::min_positive_value());
            if (cov.get(i, j) - cov.get(j, i)).abs() > T::lit(1e-10) * scale {
                return Err(Error::domain("multi_point_ei_mc: covariance is not symmetric"));
            }
        }
    }
    let factor = Cholesky::factor_semidefinite(cov, T::lit(1e-10))?;
    let t = t.get();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = vec![T::zero(); r];
    // Welford running mean / variance in f64
    let mut mean = 0.0_f64;
    let mut m2 = 0.0_f64;
    for n in 1..=n_samples {
        for zi in z.iter_mut() {
            let draw: f64 = StandardNormal.sample(&mut rng);
            *zi = T::lit(draw);
        }
        let mut best = T::neg_infinity();
        for k in 0..r {
            let row = factor.row(k);
            let mut y = means[k];
            for (l, zz) in row.iter().zip(&z) {
                y = y + *l * *zz;
            }
            best = best.max(y);
        }
        let x = (best - t).max(T::zero()).to_f64_lossy();
        let delta = x - mean;
        mean += delta / n as f64;
        m2 += delta * (x - mean);
    }
    let var = if n_samples > 1 { m2 / (n_samples - 1) as f64 } else { 0.0 };
    let se = (var / n_samples as f64).sqrt();
    Ok((T::lit(mean), T::lit(se)))
}
