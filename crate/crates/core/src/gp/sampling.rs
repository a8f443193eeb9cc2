use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gp::{Design, MaternKernel};
use crate::linalg::{Cholesky, Matrix};
use crate::scalar::Real;

/// Factorized prior covariance on a fixed grid, from which paths are drawn
/// as `L z` with `z` standard normal.
#[derive(Debug, Clone)]
pub struct PathSampler<T> {
    factor: Cholesky<T>,
}

impl<T: Real> PathSampler<T> {
    pub fn new(kernel: &MaternKernel<T>, grid: &Design<T>) -> Result<Self> {
        if let Some(j) = grid.first_duplicate() {
            return Err(Error::DuplicatePoint(format!("{:?}", grid.point(j))));
        }
        let m = grid.len();
        let gram = Matrix::from_fn(m, m, |i, j| kernel.cov(grid.point(i), grid.point(j)));
        let factor = Cholesky::factor_with_ladder(&gram, kernel.sigma2())?;
        Ok(Self { factor })
    }

    pub fn len(&self) -> usize {
        self.factor.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.factor.dim() == 0
    }

    /// Next path from `rng`.
    pub fn draw(&self, rng: &mut impl Rng) -> Vec<T> {
        let z: Vec<T> = (0..self.len())
            .map(|_| {
                let draw: f64 = StandardNormal.sample(rng);
                T::lit(draw)
            })
            .collect();
        self.factor.mul_vec(&z)
    }

    /// A path depending only on `seed`.
    pub fn draw_seeded(&self, seed: u64) -> Vec<T> {
        self.draw(&mut ChaCha8Rng::seed_from_u64(seed))
    }
}

/// Draws `n_paths` independent realizations of the zero-mean process on
/// `grid`; row `i` of the result is path `i`. Deterministic for a seed.
pub fn sample_paths<T: Real>(kernel: &MaternKernel<T>, grid: &Design<T>, n_paths: usize, seed: u64) -> Result<Matrix<T>> {
    let m = grid.len();
    if n_paths == 0 {
        return Ok(Matrix::zeros(0, m));
    }
    let sampler = PathSampler::new(kernel, grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Matrix::zeros(n_paths, m);
    for p in 0..n_paths {
        out.row_mut(p).copy_from_slice(&sampler.draw(&mut rng));
    }
    Ok(out)
}
