use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special_math::{MaternCorrelation, MaternSmoothness};

/// Isotropic Matérn covariance `k(x, y) = σ² r_ν(‖x − y‖ / β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaternKernel<T> {
    sigma2: T,
    beta: T,
    corr: MaternCorrelation<T>,
}

impl<T: Real> MaternKernel<T> {
    pub fn new(sigma2: T, beta: T, nu: MaternSmoothness<T>) -> Result<Self> {
        if !(sigma2 > T::zero()) || !sigma2.is_finite() {
            return Err(Error::domain(format!("kernel variance must be positive, got {sigma2}")));
        }
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::domain(format!("kernel length scale must be positive, got {beta}")));
        }
        Ok(Self { sigma2, beta, corr: MaternCorrelation::new(nu) })
    }

    pub fn sigma2(&self) -> T {
        self.sigma2
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn nu(&self) -> MaternSmoothness<T> {
        self.corr.smoothness()
    }

    /// Covariance as a function of Euclidean distance.
    #[inline]
    pub fn at_distance(&self, dist: T) -> T {
        self.sigma2 * self.corr.eval(dist / self.beta)
    }

    /// Unchecked covariance; `x` and `y` must have equal length.
    #[inline]
    pub fn cov(&self, x: &[T], y: &[T]) -> T {
        let d2 = x.iter().zip(y).fold(T::zero(), |s, (&a, &b)| s + (a - b) * (a - b));
        self.at_distance(d2.sqrt())
    }

    /// Covariance between two points, checking dimensions.
    pub fn eval(&self, x: &[T], y: &[T]) -> Result<T> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
        }
        Ok(self.cov(x, y))
    }
}
