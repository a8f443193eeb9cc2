//! Sampling criteria: expected improvement (EI), two-point EI, the
//! expected expected improvement (EEI), the EIEI criterion ℵₙ and the
//! integrated EI H′ₙ, plus a Monte Carlo r-point EI estimator.

mod closed_form;
mod integrated;
mod mc;
mod types;

pub use closed_form::{expected_improvement, two_point_ei};
pub use integrated::{eei, eiei, integrated_ei, CandidateLaw};
pub use mc::multi_point_ei_mc;
pub use types::{CandidateSet, Gaussian2, Threshold};

pub(crate) use types::box_volume;
