//! Bivariate standard normal distribution function.
//!
//! Drezner–Wesolowsky integration over the correlation parameter with
//! Genz's double-precision refinements: a Gauss–Legendre rule of order 6,
//! 12 or 20 depending on |ρ|, and a separate expansion for |ρ| ≥ 0.925
//! that stays accurate as ρ → ±1.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special_math::normal::cdf;

/// Correlation coefficient of a standard bivariate normal, |ρ| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Correlation<T>(T);

impl<T: Real> Correlation<T> {
    pub fn new(rho: T) -> Result<Self> {
        if rho.is_nan() || rho.abs() > T::one() {
            return Err(Error::domain(format!("correlation {rho} outside [-1, 1]")));
        }
        Ok(Self(rho))
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// Within this distance of ±1 the correlation is treated as exactly ±1.
const RHO_DEGENERATE: f64 = 1e-12;

// (weight, node) pairs; each node x is used at ±x.
const GL6: [(f64, f64); 3] = [
    (0.171_324_492_379_169_75, -0.932_469_514_203_152),
    (0.360_761_573_048_138_94, -0.661_209_386_466_264_5),
    (0.467_913_934_572_691_37, -0.238_619_186_083_196_93),
];

const GL12: [(f64, f64); 6] = [
    (0.047_175_336_386_512_02, -0.981_560_634_246_719_2),
    (0.106_939_325_995_318_88, -0.904_117_256_370_474_8),
    (0.160_078_328_543_346_1, -0.769_902_674_194_304_7),
    (0.203_167_426_723_065_65, -0.587_317_954_286_617_5),
    (0.233_492_536_538_354_64, -0.367_831_498_998_180_2),
    (0.249_147_045_813_402_7, -0.125_233_408_511_468_9),
];

const GL20: [(f64, f64); 10] = [
    (0.017_614_007_139_153_273, -0.993_128_599_185_094_9),
    (0.040_601_429_800_386_22, -0.963_971_927_277_913_8),
    (0.062_672_048_334_109_44, -0.912_234_428_251_325_8),
    (0.083_276_741_576_704_67, -0.839_116_971_822_218_8),
    (0.101_930_119_817_240_26, -0.746_331_906_460_150_8),
    (0.118_194_531_961_518_25, -0.636_053_680_726_515),
    (0.131_688_638_449_176_53, -0.510_867_001_950_827_1),
    (0.142_096_109_318_381_87, -0.373_706_088_715_419_55),
    (0.149_172_986_472_603_66, -0.227_785_851_141_645_1),
    (0.152_753_387_130_725_78, -0.076_526_521_133_497_34),
];

/// `P(Z₁ ≤ h, Z₂ ≤ k)` for a standard bivariate normal with correlation ρ.
/// Infinite limits are allowed; NaN is rejected.
pub fn bvn_cdf<T: Real>(h: T, k: T, rho: Correlation<T>) -> Result<T> {
    if h.is_nan() || k.is_nan() {
        return Err(Error::domain("bvn_cdf: NaN limit"));
    }
    Ok(lower(h, k, rho.get()))
}

/// Unchecked Φ₂; `rho` must already lie in [-1, 1].
pub(crate) fn lower<T: Real>(h: T, k: T, rho: T) -> T {
    let inf = T::infinity();
    if h == -inf || k == -inf {
        return T::zero();
    }
    if h == inf {
        return cdf(k);
    }
    if k == inf {
        return cdf(h);
    }
    let one = T::one();
    if rho >= one - T::lit(RHO_DEGENERATE) {
        return cdf(h.min(k));
    }
    if rho <= -one + T::lit(RHO_DEGENERATE) {
        return (cdf(h) + cdf(k) - one).max(T::zero());
    }
    upper(-h, -k, rho).max(T::zero()).min(one)
}

/// Genz's BVND: `P(Z₁ > dh, Z₂ > dk)` for |r| < 1.
fn upper<T: Real>(dh: T, dk: T, r: T) -> T {
    let two = T::lit(2.0);
    let two_pi = T::lit(std::f64::consts::TAU);
    let ra = r.abs();
    let rule: &[(f64, f64)] = if ra < T::lit(0.3) {
        &GL6
    } else if ra < T::lit(0.75) {
        &GL12
    } else {
        &GL20
    };

    let h = dh;
    let mut k = dk;
    let mut hk = h * k;

    if ra < T::lit(0.925) {
        let hs = (h * h + k * k) / two;
        let asr = r.asin();
        let mut acc = T::zero();
        for &(w, x) in rule {
            let (w, x) = (T::lit(w), T::lit(x));
            for node in [x, -x] {
                let sn = (asr * (node + T::one()) / two).sin();
                acc = acc + w * ((sn * hk - hs) / (T::one() - sn * sn)).exp();
            }
        }
        return acc * asr / (two * two_pi) + cdf(-h) * cdf(-k);
    }

    if r < T::zero() {
        k = -k;
        hk = -hk;
    }
    let mut bvn = T::zero();
    let a_s = (T::one() - r) * (T::one() + r);
    let mut a = a_s.sqrt();
    let b_s = (h - k) * (h - k);
    let c = (T::lit(4.0) - hk) / T::lit(8.0);
    let d = (T::lit(12.0) - hk) / T::lit(16.0);
    let five = T::lit(5.0);
    let three = T::lit(3.0);
    let asr = -(b_s / a_s + hk) / two;
    if asr > T::lit(-100.0) {
        bvn = a
            * asr.exp()
            * (T::one() - c * (b_s - a_s) * (T::one() - d * b_s / five) / three
                + c * d * a_s * a_s / five);
    }
    if hk > T::lit(-160.0) {
        let b = b_s.sqrt();
        bvn = bvn
            - (-hk / two).exp()
                * two_pi.sqrt()
                * cdf(-b / a)
                * b
                * (T::one() - c * b_s * (T::one() - d * b_s / five) / three);
    }
    a = a / two;
    for &(w, x) in rule {
        let (w, x) = (T::lit(w), T::lit(x));
        for node in [x, -x] {
            let xs = (a * (node + T::one())).powi(2);
            let rs = (T::one() - xs).sqrt();
            let asr = -(b_s / xs + hk) / two;
            if asr > T::lit(-100.0) {
                bvn = bvn
                    + a * w
                        * asr.exp()
                        * ((-hk * (T::one() - rs) / (two * (T::one() + rs))).exp() / rs
                            - (T::one() + c * xs * (T::one() + d * xs)));
            }
        }
    }
    bvn = -bvn / two_pi;

    if r > T::zero() {
        bvn + cdf(-h.max(k))
    } else {
        bvn = -bvn;
        if k > h {
            bvn = bvn + cdf(k) - cdf(h);
        }
        bvn
    }
}
