//! One- and two-point expected improvement in closed form.

use crate::acquisition::{Gaussian2, Threshold};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special_math::{bvn_lower, norm_cdf, norm_pdf};

/// Two components whose correlation is this close to ±1 are treated as
/// exact affine functions of one another.
const CORR_DEGENERATE: f64 = 1e-8;

/// `𝔼[(Y − t)₊]` for `Y ~ N(mean, sd²)`.
pub fn expected_improvement<T: Real>(mean: T, sd: T, t: Threshold<T>) -> Result<T> {
    if !(sd >= T::zero()) || !sd.is_finite() || !mean.is_finite() || !t.get().is_finite() {
        return Err(Error::domain(format!("expected_improvement: invalid arguments (mean {mean}, sd {sd})")));
    }
    Ok(ei(mean, sd, t.get(), T::zero()))
}

/// `𝔼[(max(Y₁, Y₂) − t)₊]` for a bivariate normal `(Y₁, Y₂)`.
pub fn two_point_ei<T: Real>(law: Gaussian2<T>, t: Threshold<T>) -> Result<T> {
    let law = Gaussian2::new(law.mean, law.cov)?;
    if !t.get().is_finite() {
        return Err(Error::domain("two_point_ei: non-finite threshold"));
    }
    let c = law.cov;
    let scale = c[0][0].max(c[1][1]).sqrt();
    let floor = T::lit(1e-9) * scale;
    // symmetrize so that swapping the components is exactly invariant
    let c12 = (c[0][1] + c[1][0]) * T::lit(0.5);
    Ok(two_point(law.mean[0], law.mean[1], c[0][0], c12, c[1][1], t.get(), floor))
}

/// EI with standard deviations at or below `floor` treated as zero.
#[inline]
pub(crate) fn ei<T: Real>(mean: T, sd: T, t: T, floor: T) -> T {
    let gap = mean - t;
    if sd <= floor {
        return gap.max(T::zero());
    }
    let u = gap / sd;
    if u < T::lit(-6.0) {
        // u Φ(u) + φ(u) = φ(u) q / (|u| + q), q from the Mills-ratio fraction
        let x = -u;
        let mut tail = x;
        for k in (2..=40).rev() {
            tail = x + T::from_usize_lossy(k) / tail;
        }
        let q = T::one() / tail;
        return sd * norm_pdf(u) * q / (x + q);
    }
    (gap * norm_cdf(u) + sd * norm_pdf(u)).max(T::zero())
}

/// `P(l < Z ≤ u)` computed on the side of the origin that keeps relative
/// precision.
#[inline]
fn mass<T: Real>(l: T, u: T) -> T {
    if l >= T::zero() {
        norm_cdf(-l) - norm_cdf(-u)
    } else {
        norm_cdf(u) - norm_cdf(l)
    }
}

/// `𝔼[max_i (α_i + β_i Z)]` for `Z ~ N(0, 1)`: integrates the upper
/// envelope of at most three lines piece by piece.
pub(crate) fn expected_max_affine<T: Real>(lines: &[(T, T)]) -> T {
    debug_assert!(!lines.is_empty() && lines.len() <= 3);
    let mut breaks: [T; 3] = [T::zero(); 3];
    let mut nb = 0;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let db = lines[i].1 - lines[j].1;
            if db != T::zero() {
                let z = (lines[j].0 - lines[i].0) / db;
                if z.is_finite() {
                    breaks[nb] = z;
                    nb += 1;
                }
            }
        }
    }
    let breaks = &mut breaks[..nb];
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));

    let top = |z: T| {
        let mut best = lines[0];
        let mut val = best.0 + best.1 * z;
        for &l in &lines[1..] {
            let v = l.0 + l.1 * z;
            if v > val {
                val = v;
                best = l;
            }
        }
        best
    };
    let mut total = T::zero();
    let mut lo = T::neg_infinity();
    for k in 0..=breaks.len() {
        let hi = if k < breaks.len() { breaks[k] } else { T::infinity() };
        if hi <= lo {
            continue;
        }
        let probe = if lo == T::neg_infinity() {
            if hi == T::infinity() {
                T::zero()
            } else {
                hi - T::one()
            }
        } else if hi == T::infinity() {
            lo + T::one()
        } else {
            (lo + hi) * T::lit(0.5)
        };
        let (a, b) = top(probe);
        // ∫_lo^hi (a + b z) φ(z) dz
        let dens = |z: T| if z.is_infinite() { T::zero() } else { norm_pdf(z) };
        total = total + a * mass(lo, hi) + b * (dens(lo) - dens(hi));
        lo = hi;
    }
    total
}

/// `𝔼[W 1{W > 0, D ≥ 0}]` for jointly normal `W ~ N(a, sw²)`,
/// `D ~ N(b, sd²)` with correlation `rho` (`sw, sd > 0`).
#[inline]
fn truncated_first_moment<T: Real>(a: T, sw: T, b: T, sd: T, rho: T) -> T {
    let alpha = a / sw;
    let beta = b / sd;
    let r = ((T::one() - rho) * (T::one() + rho)).max(T::zero()).sqrt();
    let (ca, cb) = if r > T::zero() {
        (norm_cdf((beta - rho * alpha) / r), norm_cdf((alpha - rho * beta) / r))
    } else {
        let step = |x: T| if x >= T::zero() { T::one() } else { T::zero() };
        (step(beta - rho * alpha), step(alpha - rho * beta))
    };
    a * bvn_lower(alpha, beta, rho) + sw * (norm_pdf(alpha) * ca + rho * norm_pdf(beta) * cb)
}

/// Two-point EI from raw moments; standard deviations at or below `floor`
/// count as zero.
pub(crate) fn two_point<T: Real>(m1: T, m2: T, c11: T, c12: T, c22: T, t: T, floor: T) -> T {
    let s1 = c11.max(T::zero()).sqrt();
    let s2 = c22.max(T::zero()).sqrt();
    let one_dimensional = s1 <= floor || s2 <= floor || {
        let corr = c12 / (s1 * s2);
        T::one() - corr.abs() < T::lit(CORR_DEGENERATE)
    };
    if one_dimensional {
        let b1 = if s1 <= floor { T::zero() } else { s1 };
        let b2 = if s2 <= floor {
            T::zero()
        } else if s1 > floor && c12 < T::zero() {
            -s2
        } else {
            s2
        };
        return expected_max_affine(&[(m1 - t, b1), (m2 - t, b2), (T::zero(), T::zero())]).max(T::zero());
    }
    let var_d = (c11 + c22 - c12 - c12).max(T::zero());
    let sd = var_d.sqrt();
    let clamp = |x: T| x.max(-T::one()).min(T::one());
    let rho1 = clamp((c11 - c12) / (s1 * sd));
    let rho2 = clamp((c22 - c12) / (s2 * sd));
    let first = truncated_first_moment(m1 - t, s1, m1 - m2, sd, rho1);
    let second = truncated_first_moment(m2 - t, s2, m2 - m1, sd, rho2);
    (first + second).max(T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(m: [f64; 2], c: [[f64; 2]; 2]) -> Gaussian2<f64> {
        Gaussian2::new(m, c).unwrap()
    }

    #[test]
    fn ei_degenerate_and_center() {
        assert_eq!(expected_improvement(0.0, 0.0, Threshold(1.0)).unwrap(), 0.0);
        assert_eq!(expected_improvement(2.5, 0.0, Threshold(1.0)).unwrap(), 1.5);
        let v = expected_improvement(0.3_f64, 2.0, Threshold(0.3)).unwrap();
        assert!((v - 2.0 * 0.398_942_280_4).abs() < 1e-9);
        assert!(expected_improvement(0.0, -1.0, Threshold(0.0)).is_err());
    }

    #[test]
    fn ei_exact_value() {
        // Φ(1) + φ(1)
        let v = expected_improvement(1.0_f64, 1.0, Threshold(0.0)).unwrap();
        assert!((v - 1.083_315_470_587_686_3).abs() < 1e-14);
    }

    #[test]
    fn ei_far_tail_is_positive_and_smooth() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let t = 4.0 + i as f64 * 0.05;
            let v: f64 = ei(0.0, 1.0, t, 0.0);
            assert!(v > 0.0 && v <= prev, "t={t}");
            prev = v;
        }
        // both branches agree at the switch point
        let a: f64 = ei(0.0, 1.0, 6.0 - 1e-12, 0.0);
        let b = ei(0.0, 1.0, 6.0 + 1e-12, 0.0);
        assert!((a - b).abs() / a < 1e-8, "{a} {b}");
    }

    #[test]
    fn envelope_reduces_to_ei() {
        for (m, s, t) in [(0.2, 1.3, 0.5), (-1.0, 0.4, 0.0), (3.0, 2.0, 1.0)] {
            let direct: f64 = ei(m, s, t, 0.0);
            let env = expected_max_affine(&[(m - t, s), (0.0, 0.0)]);
            assert!((direct - env).abs() < 1e-14);
        }
    }

    #[test]
    fn duplicated_component_equals_single_point() {
        let s = 0.7;
        let v = two_point_ei(law([0.4, 0.4], [[s * s, s * s], [s * s, s * s]]), Threshold(0.9)).unwrap();
        let e = expected_improvement(0.4, s, Threshold(0.9)).unwrap();
        assert!((v - e).abs() < 1e-12);
    }

    #[test]
    fn degenerate_second_component_below_threshold() {
        let v = two_point_ei(law([0.1, -0.3], [[0.5, 0.0], [0.0, 0.0]]), Threshold(0.0)).unwrap();
        let e = expected_improvement(0.1, 0.5_f64.sqrt(), Threshold(0.0)).unwrap();
        assert!((v - e).abs() < 1e-14);
    }

    #[test]
    fn iid_standard_normals() {
        // ∫₀^∞ 1 − Φ(m)² dm at 40 digits (tests/oracles/generate.py)
        let v = two_point_ei(law([0.0, 0.0], [[1.0, 0.0], [0.0, 1.0]]), Threshold(0.0)).unwrap();
        assert!((v - 0.681_037_072_175_310_8).abs() < 1e-13, "{v}");
    }

    #[test]
    fn anti_correlated_pair() {
        // Y₂ = −Y₁ exactly: max(Y₁, −Y₁) = |Y₁|, 𝔼|Z| = √(2/π)
        let v = two_point_ei(law([0.0, 0.0], [[1.0, -1.0], [-1.0, 1.0]]), Threshold(0.0)).unwrap();
        assert!((v - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_invalid_laws() {
        assert!(Gaussian2::new([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]]).is_err());
        assert!(Gaussian2::new([0.0, 0.0], [[-1.0, 0.0], [0.0, 1.0]]).is_err());
        assert!(Gaussian2::new([0.0, 0.0], [[1.0, 0.5], [0.4, 1.0]]).is_err());
        assert!(Gaussian2::new([f64::NAN, 0.0], [[1.0, 0.0], [0.0, 1.0]]).is_err());
    }
}
