//! Bayesian global optimization on Gaussian-process models with two
//! sampling criteria: classical expected improvement (EI), and the
//! expected integrated expected improvement (EIEI), which picks the point
//! whose evaluation is expected to shrink the integrated EI the most.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`, which is what accuracy targets
//! and the benchmark harness assume.

pub mod acquisition;
pub mod benchlab;
pub mod error;
pub mod gp;
pub mod linalg;
pub mod scalar;
pub mod special_math;
pub mod strategy;

pub use error::{Error, Result};
pub use scalar::Real;

pub type MaternKernel64 = gp::MaternKernel<f64>;
pub type Design64 = gp::Design<f64>;
pub type GpPosterior64 = gp::GpPosterior<f64>;
pub type CandidateSet64 = acquisition::CandidateSet<f64>;
pub type Gaussian2_64 = acquisition::Gaussian2<f64>;
pub type OptimizationTrace64 = strategy::OptimizationTrace<f64>;
pub type TestbedConfig64 = benchlab::TestbedConfig<f64>;
pub type Testbed64 = benchlab::Testbed<f64>;
