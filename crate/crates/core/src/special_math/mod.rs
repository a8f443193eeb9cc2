//! Scalar special functions behind every closed form in the crate.
//!
//! All functions are pure; the `pub(crate)` fast paths skip argument
//! validation and are used inside hot loops once inputs are known good.

mod bvn;
mod matern;
mod normal;

pub use bvn::{bvn_cdf, Correlation};
pub use matern::{
    ln_gamma, matern_correlation, scaled_bessel_k, MaternCorrelation, MaternSmoothness,
};
pub use normal::{std_normal_cdf, std_normal_pdf};

pub(crate) use bvn::lower as bvn_lower;
pub(crate) use normal::{cdf as norm_cdf, pdf as norm_pdf};
