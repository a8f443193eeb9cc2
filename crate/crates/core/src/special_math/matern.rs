//! Matérn correlation `r_ν(h) = (2√ν h)^ν K_ν(2√ν h) / (2^{ν-1} Γ(ν))`.
//!
//! Half-integer orders use the exact `e^{-z}·poly(z)` reduction. Other
//! orders go through [`scaled_bessel_k`], a quadrature of the integral
//! representation of `K_ν`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smoothness order ν of a Matérn correlation, ν > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MaternSmoothness<T>(T);

impl<T: Real> MaternSmoothness<T> {
    pub fn new(nu: T) -> Result<Self> {
        if !(nu > T::zero()) || !nu.is_finite() {
            return Err(Error::domain(format!("Matérn smoothness must be positive and finite, got {nu}")));
        }
        Ok(Self(nu))
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }

    /// `Some(p)` when ν = p + 1/2 exactly.
    pub fn half_integer_order(self) -> Option<usize> {
        let twice = self.0 * T::lit(2.0);
        if twice.fract() == T::zero() && twice.to_usize()? % 2 == 1 {
            self.0.floor().to_usize()
        } else {
            None
        }
    }
}

/// Natural log of Γ(x) for x > 0 (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < T::lit(0.5) {
        // reflection
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let mut acc = T::lit(COEF[0]);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(G + 0.5);
    T::lit(0.5) * T::TAU().ln() + (z + T::lit(0.5)) * t.ln() - t + acc.ln()
}

/// `z^ν K_ν(z) / (2^{ν-1} Γ(ν))` for z ≥ 0, i.e. the Matérn correlation
/// expressed in its Bessel argument.
///
/// Uses `K_ν(z) = ∫₀^∞ exp(-z cosh t) cosh(νt) dt` with the trapezoidal
/// rule; every term is assembled in log space so nothing overflows for
/// small `z` or large ν.
pub fn scaled_bessel_k<T: Real>(nu: T, z: T) -> T {
    if z == T::zero() {
        return T::one();
    }
    let ln2 = T::LN_2();
    let offset = nu * z.ln() - (nu - T::one()) * ln2 - ln_gamma(nu);
    let log_term = |t: T| {
        // ln cosh(νt) without overflow
        let nt = nu * t;
        let ln_cosh = nt + (-(nt + nt)).exp().ln_1p() - ln2;
        offset + ln_cosh - z * t.cosh()
    };
    // integrand peaks where sinh t = ν / z
    let t_peak = (nu / z).asinh();
    let width = T::one() / (z * t_peak.cosh() + T::one()).sqrt();
    let step = (width / T::lit(8.0)).min(T::lit(0.05));
    let peak_log = log_term(t_peak);
    let cutoff = peak_log - T::lit(45.0);

    let mut sum = T::lit(0.5) * log_term(T::zero()).exp();
    let mut k = 1usize;
    loop {
        let t = step * T::from_usize_lossy(k);
        let lt = log_term(t);
        sum = sum + lt.exp();
        if t > t_peak && lt < cutoff {
            break;
        }
        k += 1;
    }
    sum * step
}

/// Precomputed evaluator for `r_ν`. Half-integer orders store the
/// polynomial coefficients of the closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct MaternCorrelation<T> {
    nu: MaternSmoothness<T>,
    scale: T,
    form: Form<T>,
}

#[derive(Debug, Clone, PartialEq)]
enum Form<T> {
    /// `r = e^{-z} Σ_j c_j z^j`, coefficients in ascending powers.
    HalfInteger(Vec<T>),
    General,
}

impl<T: Real> MaternCorrelation<T> {
    pub fn new(nu: MaternSmoothness<T>) -> Self {
        let scale = T::lit(2.0) * nu.get().sqrt();
        let form = match nu.half_integer_order() {
            Some(p) => Form::HalfInteger(half_integer_coefficients(p)),
            None => Form::General,
        };
        Self { nu, scale, form }
    }

    pub fn smoothness(&self) -> MaternSmoothness<T> {
        self.nu
    }

    /// `r_ν(h)` for h ≥ 0 (not checked).
    #[inline]
    pub fn eval(&self, h: T) -> T {
        let z = self.scale * h;
        match &self.form {
            Form::HalfInteger(c) => {
                let mut poly = T::zero();
                for &cj in c.iter().rev() {
                    poly = poly * z + cj;
                }
                (-z).exp() * poly
            }
            Form::General => scaled_bessel_k(self.nu.get(), z).min(T::one()),
        }
    }

    /// `r_ν(h)` by the general Bessel route regardless of ν.
    pub fn eval_general(&self, h: T) -> T {
        scaled_bessel_k(self.nu.get(), self.scale * h)
    }
}

/// For ν = p + 1/2:
/// `r = e^{-z} (p!/(2p)!) Σ_{k=0}^{p} (p+k)!/(k!(p-k)!) (2z)^{p-k}`.
fn half_integer_coefficients<T: Real>(p: usize) -> Vec<T> {
    let fact = |n: usize| (1..=n).fold(1.0_f64, |acc, i| acc * i as f64);
    let lead = fact(p) / fact(2 * p);
    let mut coeffs = vec![T::zero(); p + 1];
    for k in 0..=p {
        let c = lead * fact(p + k) / (fact(k) * fact(p - k)) * 2f64.powi((p - k) as i32);
        coeffs[p - k] = T::lit(c);
    }
    coeffs
}

/// Matérn correlation at scaled distance `h ≥ 0`.
pub fn matern_correlation<T: Real>(h: T, nu: MaternSmoothness<T>) -> Result<T> {
    if !(h >= T::zero()) {
        return Err(Error::domain(format!("matern_correlation: negative or NaN distance {h}")));
    }
    Ok(MaternCorrelation::new(nu).eval(h))
}
