use rayon::prelude::*;

use crate::benchlab::Testbed;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::strategy::{extract_estimators, run_optimization, GridValues, Policy};

/// Errors of one strategy on one path after `n` evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkRecord<T> {
    pub path_id: usize,
    pub strategy: Policy,
    pub n: usize,
    /// `M − Mₙ`
    pub value_error: T,
    /// `‖x★ − x★ₙ‖`
    pub location_error: T,
}

/// A path dropped from the benchmark because a strategy failed on it.
#[derive(Debug, Clone, PartialEq)]
pub struct PathFailure {
    pub path_id: usize,
    pub strategy: Policy,
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutcome<T> {
    /// Ordered by path, then strategy (in the order given), then `n`.
    pub records: Vec<BenchmarkRecord<T>>,
    pub failures: Vec<PathFailure>,
}

/// Runs every strategy on every path of `testbed` with `budget`
/// evaluations. Paths run in parallel on `threads` workers (all cores when
/// `None`); the output does not depend on the thread count.
///
/// When a strategy fails on a path, that path is dropped for all
/// strategies so the curves stay paired. More than 1% failed paths is an
/// error.
pub fn run_benchmark<T: Real>(
    testbed: &Testbed<T>,
    strategies: &[Policy],
    budget: usize,
    threads: Option<usize>,
) -> Result<BenchmarkOutcome<T>> {
    if strategies.is_empty() {
        return Err(Error::config("no strategies to benchmark"));
    }
    if budget == 0 || budget > testbed.grid.len() {
        return Err(Error::config(format!("budget must be in 1..={}, got {budget}", testbed.grid.len())));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        if k == 0 {
            return Err(Error::config("threads must be at least 1"));
        }
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Error::config(format!("thread pool: {e}")))?;

    let per_path: Vec<std::result::Result<Vec<BenchmarkRecord<T>>, PathFailure>> =
        pool.install(|| (0..testbed.n_paths()).into_par_iter().map(|p| run_path(testbed, p, strategies, budget)).collect());

    let mut records = Vec::with_capacity(testbed.n_paths() * strategies.len() * budget);
    let mut failures = Vec::new();
    for r in per_path {
        match r {
            Ok(mut recs) => records.append(&mut recs),
            Err(f) => failures.push(f),
        }
    }
    // more than 1% of the paths
    if failures.len() * 100 > testbed.n_paths() {
        let first = &failures[0];
        return Err(Error::Benchmark(format!(
            "{} of {} paths failed (first: path {} with {}: {})",
            failures.len(),
            testbed.n_paths(),
            first.path_id,
            first.strategy,
            first.error
        )));
    }
    Ok(BenchmarkOutcome { records, failures })
}

fn run_path<T: Real>(
    testbed: &Testbed<T>,
    p: usize,
    strategies: &[Policy],
    budget: usize,
) -> std::result::Result<Vec<BenchmarkRecord<T>>, PathFailure> {
    let values = testbed.path(p);
    let truth = testbed.truths[p];
    let mut out = Vec::with_capacity(strategies.len() * budget);
    for &strategy in strategies {
        let fail = |error: Error| PathFailure { path_id: p, strategy, error };
        let trace = run_optimization(
            &mut GridValues(values),
            &testbed.config.kernel,
            &testbed.domain,
            &testbed.grid,
            budget,
            strategy,
        )
        .map_err(|a| fail(a.error))?;
        let errs = extract_estimators(&trace, testbed.grid.points(), values, truth.argmax).map_err(fail)?;
        out.extend(errs.into_iter().enumerate().map(|(k, e)| BenchmarkRecord {
            path_id: p,
            strategy,
            n: k + 1,
            value_error: e.value_error,
            location_error: e.location_error,
        }));
    }
    Ok(out)
}
