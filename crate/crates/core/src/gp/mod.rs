//! Noiseless Gaussian-process regression with a Matérn covariance.
//!
//! A [`GpPosterior`] is immutable; [`GpPosterior::update`] returns a new
//! posterior whose factor is extended by one row instead of refactored.

mod design;
mod kernel;
mod posterior;
mod sampling;

pub use design::Design;
pub use kernel::MaternKernel;
pub use posterior::{condition, GpPosterior};
pub use sampling::{sample_paths, PathSampler};
