//! Univariate standard normal density and distribution function.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(2π)^(-1/2)`
pub(crate) const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal density, `φ(z) = (2π)^(-1/2) exp(-z²/2)`.
pub fn std_normal_pdf<T: Real>(z: T) -> Result<T> {
    if !z.is_finite() {
        return Err(Error::domain(format!("std_normal_pdf: non-finite argument {z}")));
    }
    Ok(pdf(z))
}

/// Standard normal distribution function Φ. Accepts ±∞; rejects NaN.
pub fn std_normal_cdf<T: Real>(z: T) -> Result<T> {
    if z.is_nan() {
        return Err(Error::domain("std_normal_cdf: NaN argument"));
    }
    Ok(cdf(z))
}

#[inline]
pub(crate) fn pdf<T: Real>(z: T) -> T {
    T::lit(FRAC_1_SQRT_2PI) * (-(z * z) * T::lit(0.5)).exp()
}

/// Φ through `erfc`, which keeps full relative precision in the lower
/// tail (down to Φ ≈ 1e-308).
#[inline]
pub(crate) fn cdf<T: Real>(z: T) -> T {
    let z = z.to_f64_lossy();
    T::lit(0.5 * libm::erfc(-z * std::f64::consts::FRAC_1_SQRT_2))
}
