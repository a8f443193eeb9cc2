use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special_math::ln_gamma;

/// Length scale `(0.04 Γ(d/2 + 1) / π^{d/2})^{1/d}`: the radius of a
/// d-ball of volume 0.04.
pub fn beta_from_dimension<T: Real>(d: usize) -> Result<T> {
    if d == 0 {
        return Err(Error::domain("beta_from_dimension: dimension must be at least 1"));
    }
    let half = T::from_usize_lossy(d) * T::lit(0.5);
    let ln = T::lit(0.04).ln() + ln_gamma(half + T::one()) - half * T::PI().ln();
    Ok((ln / T::from_usize_lossy(d)).exp())
}

/// `(0.8x − 0.2)² + exp(−½|x + 0.1|^1.95 / 0.1^1.95) + exp(−½(2x − 0.6)²/0.1) − 0.02`
/// on `[−1, 1]`.
pub fn fig2_function<T: Real>(x: T) -> Result<T> {
    if !(x >= -T::one() && x <= T::one()) {
        return Err(Error::domain(format!("fig2_function: {x} is outside [-1, 1]")));
    }
    let half = T::lit(0.5);
    let p = T::lit(1.95);
    let a = T::lit(0.8) * x - T::lit(0.2);
    let b = (-half * (x + T::lit(0.1)).abs().powf(p) / T::lit(0.1).powf(p)).exp();
    let c = T::lit(2.0) * x - T::lit(0.6);
    let c = (-half * c * c / T::lit(0.1)).exp();
    Ok(a * a + b + c - T::lit(0.02))
}
