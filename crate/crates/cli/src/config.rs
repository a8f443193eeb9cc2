//! TOML run configuration, validated in full before any computation.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use eiei::acquisition::CandidateSet;
use eiei::benchlab::{beta_from_dimension, GridScheme, TestbedConfig};
use eiei::gp::MaternKernel;
use eiei::special_math::MaternSmoothness;
use eiei::strategy::{BoxDomain, Policy};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub seed: Option<u64>,
    pub kernel: RawKernel,
    pub domain: Option<RawDomain>,
    pub candidates: Option<RawCandidates>,
    pub optimize: Option<RawOptimize>,
    pub demo: Option<RawDemo>,
    pub bench: Option<RawBench>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawKernel {
    #[serde(default = "one")]
    pub sigma2: f64,
    pub nu: f64,
    /// A number, or "auto" for `beta_from_dimension(d)`.
    pub beta: toml::Value,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDomain {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCandidates {
    pub size: usize,
    #[serde(default = "uniform")]
    pub scheme: String,
}

fn uniform() -> String {
    "UNIFORM_RANDOM".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOptimize {
    pub policy: String,
    pub budget: usize,
    /// "fig2", or a CSV file `x1,…,xd,f` (relative to the config file)
    /// whose points become the candidate set.
    pub objective: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDemo {
    pub design: Vec<f64>,
    /// Observed values; defaults to the fig2 function at `design`.
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBench {
    pub d: usize,
    pub m: usize,
    pub n_paths: usize,
    pub budget: usize,
    #[serde(default = "uniform")]
    pub grid_scheme: String,
    #[serde(default = "both")]
    pub strategies: Vec<String>,
}

fn both() -> Vec<String> {
    vec!["EI".into(), "EIEI".into()]
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn load(path: &Path) -> Result<(RawConfig, PathBuf), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawConfig = toml::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((raw, base))
}

impl RawConfig {
    pub fn seed(&self, cli: Option<u64>) -> Result<u64, CliError> {
        cli.or(self.seed).ok_or_else(|| bad("`seed` is required (in the config or via --seed)"))
    }

    pub fn kernel(&self, d: usize) -> Result<MaternKernel<f64>, CliError> {
        let k = &self.kernel;
        let beta = match &k.beta {
            toml::Value::String(s) if s == "auto" => beta_from_dimension(d)?,
            toml::Value::Float(b) => *b,
            toml::Value::Integer(b) => *b as f64,
            other => return Err(bad(format!("kernel.beta must be a number or \"auto\", got {other}"))),
        };
        let nu = MaternSmoothness::new(k.nu).map_err(|e| bad(format!("kernel.nu: {e}")))?;
        MaternKernel::new(k.sigma2, beta, nu).map_err(|e| bad(format!("kernel: {e}")))
    }

    pub fn domain(&self) -> Result<BoxDomain<f64>, CliError> {
        let d = self.domain.as_ref().ok_or_else(|| bad("missing [domain] section"))?;
        if d.lower.len() != d.upper.len() {
            return Err(bad("domain.lower and domain.upper differ in length"));
        }
        BoxDomain::new(d.lower.clone(), d.upper.clone()).map_err(|e| bad(format!("domain: {e}")))
    }

    pub fn candidates(&self, domain: &BoxDomain<f64>, seed: u64) -> Result<CandidateSet<f64>, CliError> {
        let c = self.candidates.as_ref().ok_or_else(|| bad("missing [candidates] section"))?;
        if c.size == 0 {
            return Err(bad("candidates.size must be positive"));
        }
        let scheme = scheme(&c.scheme)?;
        let set = match scheme {
            GridScheme::UniformRandom => CandidateSet::uniform_random(domain.lower(), domain.upper(), c.size, seed)?,
            GridScheme::Regular => {
                let d = domain.dim();
                let guess = (c.size as f64).powf(1.0 / d as f64).round() as usize;
                let side = (guess.saturating_sub(1)..=guess + 1)
                    .find(|&k| k >= 1 && k.checked_pow(d as u32) == Some(c.size))
                    .ok_or_else(|| bad(format!("REGULAR candidates need size to be a perfect {d}-th power")))?;
                CandidateSet::regular_grid(domain.lower(), domain.upper(), side)?
            }
        };
        Ok(set)
    }

    pub fn testbed(&self, seed: u64) -> Result<(TestbedConfig<f64>, Vec<Policy>), CliError> {
        let b = self.bench.as_ref().ok_or_else(|| bad("missing [bench] section"))?;
        let strategies = b
            .strategies
            .iter()
            .map(|s| policy(s))
            .collect::<Result<Vec<_>, _>>()?;
        if strategies.is_empty() {
            return Err(bad("bench.strategies is empty"));
        }
        let mut sorted = strategies.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != strategies.len() {
            return Err(bad("bench.strategies lists a strategy twice"));
        }
        let cfg = TestbedConfig {
            d: b.d,
            m: b.m,
            n_paths: b.n_paths,
            kernel: self.kernel(b.d.max(1))?,
            budget: b.budget,
            seed,
            grid_scheme: scheme(&b.grid_scheme)?,
        };
        cfg.validate()?;
        Ok((cfg, strategies))
    }
}

pub fn policy(s: &str) -> Result<Policy, CliError> {
    Policy::from_name(s).ok_or_else(|| bad(format!("unknown policy `{s}` (expected EI or EIEI)")))
}

fn scheme(s: &str) -> Result<GridScheme, CliError> {
    GridScheme::from_name(s).ok_or_else(|| bad(format!("unknown grid scheme `{s}` (expected UNIFORM_RANDOM or REGULAR)")))
}
