mod common;

use eiei::acquisition::{eei, expected_improvement, multi_point_ei_mc, two_point_ei, Gaussian2, Threshold};
use eiei::gp::Design;
use eiei::linalg::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const SAMPLES: usize = 200_000;

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Joint posterior law of (ξ(x), ξ(y)) and a threshold near the data.
fn random_pair(seed: u64) -> (eiei::GpPosterior64, Vec<f64>, Vec<f64>, Threshold<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = if seed % 2 == 0 { 1 } else { 3 };
    let post = common::random_posterior(seed, d, rng.random_range(2..8));
    let x = common::random_point(&mut rng, d);
    let y = common::random_point(&mut rng, d);
    let t = Threshold::from_posterior(&post).unwrap();
    (post, x, y, t)
}

fn within(value: f64, (mc, se): (f64, f64)) -> bool {
    (value - mc).abs() <= 3.0 * se + 1e-12
}

#[test]
fn ei_matches_sampling() {
    let mut hits = 0;
    for seed in 0..12 {
        let (post, x, _, t) = random_pair(seed);
        let (m, v) = post.mean_var(&x).unwrap();
        let s = v.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let draws: Vec<f64> = (0..SAMPLES)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                (m + s * z - t.0).max(0.0)
            })
            .collect();
        hits += within(expected_improvement(m, s, t).unwrap(), mean_se(&draws)) as usize;
    }
    assert!(hits >= 11, "{hits}/12");
}

#[test]
fn two_point_ei_matches_oracle() {
    let mut hits = 0;
    for seed in 0..12 {
        let (post, x, y, t) = random_pair(seed);
        let (m, c) = post.posterior_mean_cov(&Design::from_points(post.dim(), &[&x, &y]).unwrap()).unwrap();
        let law = Gaussian2::new([m[0], m[1]], [[c.get(0, 0), c.get(0, 1)], [c.get(1, 0), c.get(1, 1)]]).unwrap();
        let mc = multi_point_ei_mc(&m, &c, t, SAMPLES, 77 + seed).unwrap();
        hits += within(two_point_ei(law, t).unwrap(), mc) as usize;
    }
    assert!(hits >= 11, "{hits}/12");
}

#[test]
fn eei_matches_pathwise_sampling() {
    let mut hits = 0;
    for seed in 0..12 {
        let (post, x, y, t) = random_pair(seed);
        let (m, c) = post.posterior_mean_cov(&Design::from_points(post.dim(), &[&x, &y]).unwrap()).unwrap();
        // 2×2 Cholesky by hand
        let l00 = c.get(0, 0).max(0.0).sqrt();
        let l10 = if l00 > 0.0 { c.get(1, 0) / l00 } else { 0.0 };
        let l11 = (c.get(1, 1) - l10 * l10).max(0.0).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        // EEI(y; x) = 𝔼[(max(ξx, ξy) − t)₊ − (ξx − t)₊]
        let draws: Vec<f64> = (0..SAMPLES)
            .map(|_| {
                let z0: f64 = StandardNormal.sample(&mut rng);
                let z1: f64 = StandardNormal.sample(&mut rng);
                let a = m[0] + l00 * z0;
                let b = m[1] + l10 * z0 + l11 * z1;
                (a.max(b) - t.0).max(0.0) - (a - t.0).max(0.0)
            })
            .collect();
        hits += within(eei(&post, t, &x, &y).unwrap(), mean_se(&draws)) as usize;
    }
    assert!(hits >= 11, "{hits}/12");
}

#[test]
fn single_point_oracle_is_ei() {
    let cov = Matrix::from_row_major(1, 1, vec![0.49]).unwrap();
    let (mc, se) = multi_point_ei_mc(&[0.2_f64], &cov, Threshold(0.5), SAMPLES, 3).unwrap();
    let exact = expected_improvement(0.2, 0.7, Threshold(0.5)).unwrap();
    assert!((mc - exact).abs() <= 3.0 * se, "{mc} ± {se} vs {exact}");
}

#[test]
fn three_point_oracle_dominates_pairs() {
    let cov = Matrix::from_row_major(3, 3, vec![1.0, 0.5, 0.2, 0.5, 1.0, 0.4, 0.2, 0.4, 1.0]).unwrap();
    let means = [0.1, -0.2, 0.3];
    let t = Threshold(0.4);
    let (three, se) = multi_point_ei_mc(&means, &cov, t, SAMPLES, 11).unwrap();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let law = Gaussian2::new(
            [means[i], means[j]],
            [[cov.get(i, i), cov.get(i, j)], [cov.get(j, i), cov.get(j, j)]],
        )
        .unwrap();
        assert!(three + 3.0 * se >= two_point_ei(law, t).unwrap());
    }
    let sum: f64 = (0..3).map(|i| expected_improvement(means[i], 1.0, t).unwrap()).sum();
    assert!(three <= sum);
}
