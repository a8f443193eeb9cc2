use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::acquisition::CandidateSet;
use crate::error::{Error, Result};
use crate::gp::{MaternKernel, PathSampler};
use crate::linalg::Matrix;
use crate::scalar::Real;
use crate::strategy::BoxDomain;

/// How the grid in `[0, 1]^d` is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScheme {
    /// `m` i.i.d. uniform points.
    UniformRandom,
    /// Regular lattice; `m` must be a perfect d-th power.
    Regular,
}

impl GridScheme {
    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "UNIFORM_RANDOM" | "UNIFORM" | "RANDOM" => Some(GridScheme::UniformRandom),
            "REGULAR" => Some(GridScheme::Regular),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestbedConfig<T> {
    pub d: usize,
    pub m: usize,
    pub n_paths: usize,
    pub kernel: MaternKernel<T>,
    pub budget: usize,
    pub seed: u64,
    pub grid_scheme: GridScheme,
}

impl<T: Real> TestbedConfig<T> {
    /// 100 paths on 200 uniform points of `[0, 1]^d`, budget 40.
    pub fn desk_scale(d: usize, kernel: MaternKernel<T>, seed: u64) -> Self {
        Self { d, m: 200, n_paths: 100, kernel, budget: 40, seed, grid_scheme: GridScheme::UniformRandom }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::config("d must be at least 1"));
        }
        if self.m < 2 {
            return Err(Error::config(format!("m must be at least 2, got {}", self.m)));
        }
        if self.n_paths == 0 {
            return Err(Error::config("n_paths must be at least 1"));
        }
        if self.budget == 0 || self.budget > self.m {
            return Err(Error::config(format!("budget must be in 1..={}, got {}", self.m, self.budget)));
        }
        if self.grid_scheme == GridScheme::Regular {
            regular_side(self.m, self.d)
                .ok_or_else(|| Error::config(format!("REGULAR grid needs m to be a perfect {}-th power, got {}", self.d, self.m)))?;
        }
        Ok(())
    }
}

fn regular_side(m: usize, d: usize) -> Option<usize> {
    let guess = (m as f64).powf(1.0 / d as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&k| k >= 1 && k.checked_pow(d as u32) == Some(m))
}

/// Maximum of one path over the grid and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathTruth<T> {
    pub max: T,
    /// Lowest grid index attaining `max`.
    pub argmax: usize,
}

#[derive(Debug, Clone)]
pub struct Testbed<T> {
    pub config: TestbedConfig<T>,
    pub domain: BoxDomain<T>,
    pub grid: CandidateSet<T>,
    /// Row `p` holds path `p` on the grid.
    pub paths: Matrix<T>,
    pub truths: Vec<PathTruth<T>>,
}

impl<T: Real> Testbed<T> {
    pub fn n_paths(&self) -> usize {
        self.paths.rows()
    }

    pub fn path(&self, p: usize) -> &[T] {
        self.paths.row(p)
    }
}

/// Grid from `seed`; path `p` from seed `seed + p` on a separate ChaCha
/// stream, so every path is independent of the others and of scheduling.
pub fn generate_testbed<T: Real>(config: &TestbedConfig<T>) -> Result<Testbed<T>> {
    config.validate()?;
    let domain = BoxDomain::unit(config.d)?;
    let grid = match config.grid_scheme {
        GridScheme::UniformRandom => CandidateSet::uniform_random(domain.lower(), domain.upper(), config.m, config.seed)?,
        GridScheme::Regular => {
            let side = regular_side(config.m, config.d).expect("validated");
            CandidateSet::regular_grid(domain.lower(), domain.upper(), side)?
        }
    };
    let sampler = PathSampler::new(&config.kernel, grid.points())?;
    let mut paths = Matrix::zeros(config.n_paths, config.m);
    let mut truths = Vec::with_capacity(config.n_paths);
    for p in 0..config.n_paths {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(p as u64));
        rng.set_stream(1);
        let path = sampler.draw(&mut rng);
        truths.push(truth_of(&path));
        paths.row_mut(p).copy_from_slice(&path);
    }
    Ok(Testbed { config: config.clone(), domain, grid, paths, truths })
}

fn truth_of<T: Real>(values: &[T]) -> PathTruth<T> {
    let mut best = PathTruth { max: values[0], argmax: 0 };
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.max {
            best = PathTruth { max: v, argmax: i };
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_math::MaternSmoothness;

    fn config(scheme: GridScheme, m: usize) -> TestbedConfig<f64> {
        let k = MaternKernel::new(1.0, 0.25, MaternSmoothness::new(2.5).unwrap()).unwrap();
        TestbedConfig { d: 2, m, n_paths: 3, kernel: k, budget: 4, seed: 11, grid_scheme: scheme }
    }

    #[test]
    fn validation() {
        assert!(config(GridScheme::Regular, 16).validate().is_ok());
        assert!(config(GridScheme::Regular, 15).validate().is_err());
        assert!(config(GridScheme::UniformRandom, 3).validate().is_err());
        let mut c = config(GridScheme::UniformRandom, 20);
        c.n_paths = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn truths_and_determinism() {
        let c = config(GridScheme::UniformRandom, 30);
        let a = generate_testbed(&c).unwrap();
        let b = generate_testbed(&c).unwrap();
        assert_eq!(a.paths, b.paths);
        for p in 0..a.n_paths() {
            let row = a.path(p);
            let t = a.truths[p];
            assert_eq!(row[t.argmax], t.max);
            assert!(row.iter().all(|&v| v <= t.max));
            assert!(row[..t.argmax].iter().all(|&v| v < t.max));
        }
        // more paths leave the first ones unchanged
        let mut more = c.clone();
        more.n_paths = 5;
        let m = generate_testbed(&more).unwrap();
        assert_eq!(m.path(2), a.path(2));
    }

    #[test]
    fn regular_side_exact() {
        assert_eq!(regular_side(1000, 3), Some(10));
        assert_eq!(regular_side(200, 3), None);
        assert_eq!(regular_side(7, 1), Some(7));
    }
}
