#![allow(dead_code)]

use eiei::gp::{condition, sample_paths, Design, GpPosterior, MaternKernel};
use eiei::special_math::MaternSmoothness;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn kernel(sigma2: f64, beta: f64, nu: f64) -> MaternKernel<f64> {
    MaternKernel::new(sigma2, beta, MaternSmoothness::new(nu).unwrap()).unwrap()
}

/// A posterior on `[0, 1]^d` conditioned on `n` random points.
pub fn random_posterior(seed: u64, d: usize, n: usize) -> GpPosterior<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nus = [0.5, 1.5, 2.5, 6.5];
    let k = kernel(rng.random_range(0.5..2.0), rng.random_range(0.15..0.6), nus[rng.random_range(0..4)]);
    let mut design = Design::empty(d);
    let mut p = vec![0.0; d];
    while design.len() < n {
        p.iter_mut().for_each(|x| *x = rng.random::<f64>());
        let _ = design.push(&p);
    }
    // observations are a draw from the prior, as in the model
    let values = sample_paths(&k, &design, 1, rng.random()).unwrap().row(0).to_vec();
    condition(k, design, values).unwrap()
}

pub fn random_point(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.random::<f64>()).collect()
}
