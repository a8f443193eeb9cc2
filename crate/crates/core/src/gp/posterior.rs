use crate::error::{Error, Result};
use crate::gp::{Design, MaternKernel};
use crate::linalg::{Cholesky, Matrix};
use crate::scalar::Real;

/// Gaussian process conditioned on exact observations.
#[derive(Debug, Clone)]
pub struct GpPosterior<T> {
    kernel: MaternKernel<T>,
    design: Design<T>,
    values: Vec<T>,
    factor: Cholesky<T>,
    /// `(K + jitter·I)⁻¹ values`
    weights: Vec<T>,
}

/// Conditions the zero-mean prior with covariance `kernel` on
/// `values[i] = f(design[i])`.
pub fn condition<T: Real>(kernel: MaternKernel<T>, design: Design<T>, values: Vec<T>) -> Result<GpPosterior<T>> {
    GpPosterior::condition(kernel, design, values)
}

impl<T: Real> GpPosterior<T> {
    /// Unconditioned prior over `dim`-dimensional inputs.
    pub fn prior(kernel: MaternKernel<T>, dim: usize) -> Self {
        let jitter = T::lit(1e-12) * kernel.sigma2();
        Self {
            kernel,
            design: Design::empty(dim),
            values: Vec::new(),
            factor: Cholesky::empty(jitter),
            weights: Vec::new(),
        }
    }

    pub fn condition(kernel: MaternKernel<T>, design: Design<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != design.len() {
            return Err(Error::DimensionMismatch { expected: design.len(), found: values.len() });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite observation {v}")));
        }
        if let Some(j) = design.first_duplicate() {
            return Err(Error::DuplicatePoint(format!("{:?}", design.point(j))));
        }
        let n = design.len();
        let gram = Matrix::from_fn(n, n, |i, j| kernel.cov(design.point(i), design.point(j)));
        let factor = Cholesky::factor_with_ladder(&gram, kernel.sigma2())?;
        let weights = factor.solve(&values);
        Ok(Self { kernel, design, values, factor, weights })
    }

    pub fn kernel(&self) -> &MaternKernel<T> {
        &self.kernel
    }

    pub fn design(&self) -> &Design<T> {
        &self.design
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.design.dim()
    }

    /// Jitter added to the diagonal of the design covariance.
    pub fn jitter(&self) -> T {
        self.factor.jitter()
    }

    /// Largest observed value, `None` before any observation.
    pub fn best_value(&self) -> Option<T> {
        self.values.iter().copied().reduce(T::max)
    }

    /// Adds the observation `f(x_new) = v_new`. The factor grows by one row;
    /// if the new pivot collapses, the whole model is refit with a larger
    /// jitter.
    pub fn update(&self, x_new: &[T], v_new: T) -> Result<Self> {
        if x_new.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x_new.len() });
        }
        if !v_new.is_finite() {
            return Err(Error::domain(format!("non-finite observation {v_new}")));
        }
        if self.design.position(x_new).is_some() {
            return Err(Error::DuplicatePoint(format!("{x_new:?}")));
        }
        let mut design = self.design.clone();
        design.push(x_new)?;
        let mut values = self.values.clone();
        values.push(v_new);

        let cross: Vec<T> = self.design.iter().map(|p| self.kernel.cov(p, x_new)).collect();
        match self.factor.extend(&cross, self.kernel.sigma2()) {
            Some(factor) => {
                let weights = factor.solve(&values);
                Ok(Self { kernel: self.kernel.clone(), design, values, factor, weights })
            }
            None => Self::condition(self.kernel.clone(), design, values),
        }
    }

    /// Posterior mean and variance at a single point.
    pub fn mean_var(&self, x: &[T]) -> Result<(T, T)> {
        let targets = Design::from_points(self.dim(), &[x])?;
        let (m, c) = self.posterior_mean_cov(&targets)?;
        Ok((m[0], c.get(0, 0)))
    }

    /// Joint posterior law at `targets`.
    pub fn posterior_mean_cov(&self, targets: &Design<T>) -> Result<(Vec<T>, Matrix<T>)> {
        if targets.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: targets.dim() });
        }
        let t = targets.len();
        let prior = Matrix::from_fn(t, t, |i, j| self.kernel.cov(targets.point(i), targets.point(j)));
        Ok(self.mean_cov_with_prior(targets, &prior))
    }

    /// As [`Self::posterior_mean_cov`] with the prior covariance of the
    /// targets supplied by the caller (it does not change between steps of
    /// a sequential design, so callers cache it).
    pub fn mean_cov_with_prior(&self, targets: &Design<T>, prior: &Matrix<T>) -> (Vec<T>, Matrix<T>) {
        let t = targets.len();
        let n = self.len();
        debug_assert_eq!((prior.rows(), prior.cols()), (t, t));

        let mut proj = Matrix::from_fn(n, t, |i, j| self.kernel.cov(self.design.point(i), targets.point(j)));
        let mut mean = vec![T::zero(); t];
        for i in 0..n {
            let w = self.weights[i];
            for (m, &k) in mean.iter_mut().zip(proj.row(i)) {
                *m = *m + w * k;
            }
        }
        self.factor.solve_lower_matrix(&mut proj);

        let mut cov = prior.clone();
        for k in 0..n {
            let v = proj.row(k);
            for i in 0..t {
                let vi = v[i];
                if vi == T::zero() {
                    continue;
                }
                let row = cov.row_mut(i);
                for j in i..t {
                    row[j] = row[j] - vi * v[j];
                }
            }
        }
        for i in 0..t {
            for j in 0..i {
                let upper = cov.get(j, i);
                cov.set(i, j, upper);
            }
            if cov.get(i, i) < T::zero() {
                cov.set(i, i, T::zero());
            }
        }

        // Targets that coincide with an observation are known exactly.
        for j in 0..t {
            if let Some(i) = self.design.position(targets.point(j)) {
                mean[j] = self.values[i];
                for k in 0..t {
                    cov.set(j, k, T::zero());
                    cov.set(k, j, T::zero());
                }
            }
        }
        (mean, cov)
    }
}
