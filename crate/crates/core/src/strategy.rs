//! The sequential design loop: evaluate at the center, then repeatedly
//! condition the GP on everything seen so far and pick the next point by
//! maximizing EI or minimizing ℵₙ over a finite candidate set.

use crate::acquisition::{box_volume, CandidateLaw, CandidateSet, Threshold};
use crate::error::{Error, Result};
use crate::gp::{Design, GpPosterior, MaternKernel};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// Sampling criterion driving the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Policy {
    /// `X_{n+1} = argmax EIₙ`
    EiMax,
    /// `X_{n+1} = argmin ℵₙ`
    EieiMin,
}

impl Policy {
    pub const ALL: [Policy; 2] = [Policy::EiMax, Policy::EieiMin];

    pub fn name(self) -> &'static str {
        match self {
            Policy::EiMax => "EI",
            Policy::EieiMin => "EIEI",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EI" | "EI_MAX" => Some(Policy::EiMax),
            "EIEI" | "EIEI_MIN" => Some(Policy::EieiMin),
            _ => None,
        }
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Axis-aligned box `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain<T> {
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Real> BoxDomain<T> {
    pub fn new(lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        box_volume(&lower, &upper)?;
        Ok(Self { lower, upper })
    }

    pub fn unit(dim: usize) -> Result<Self> {
        Self::new(vec![T::zero(); dim], vec![T::one(); dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn volume(&self) -> T {
        self.lower.iter().zip(&self.upper).fold(T::one(), |v, (&a, &b)| v * (b - a))
    }

    pub fn center(&self) -> Vec<T> {
        self.lower.iter().zip(&self.upper).map(|(&a, &b)| (a + b) * T::lit(0.5)).collect()
    }
}

/// Function being maximized, queried at candidate points.
pub trait Objective<T> {
    /// Value at candidate `index`, whose coordinates are `x`.
    fn evaluate(&mut self, index: usize, x: &[T]) -> Result<T>;
}

impl<T, F: FnMut(usize, &[T]) -> Result<T>> Objective<T> for F {
    fn evaluate(&mut self, index: usize, x: &[T]) -> Result<T> {
        self(index, x)
    }
}

/// Objective tabulated on the candidate set.
#[derive(Debug, Clone, Copy)]
pub struct GridValues<'a, T>(pub &'a [T]);

impl<T: Real> Objective<T> for GridValues<'_, T> {
    fn evaluate(&mut self, index: usize, _x: &[T]) -> Result<T> {
        self.0
            .get(index)
            .copied()
            .ok_or_else(|| Error::Objective(format!("no tabulated value for candidate {index}")))
    }
}

/// A chosen candidate and the criterion value that chose it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection<T> {
    pub index: usize,
    pub value: T,
}

/// Quantities recorded when choosing an evaluation point after the first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDiagnostics<T> {
    /// `H′ₙ` before the evaluation.
    pub integrated_ei: T,
    /// Criterion value at the chosen point (EIₙ or ℵₙ).
    pub criterion: T,
}

/// Evaluations of one run, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationTrace<T> {
    policy: Policy,
    points: Design<T>,
    indices: Vec<usize>,
    values: Vec<T>,
    running_max: Vec<T>,
    diagnostics: Vec<Option<StepDiagnostics<T>>>,
}

impl<T: Real> OptimizationTrace<T> {
    fn new(policy: Policy, dim: usize) -> Self {
        Self {
            policy,
            points: Design::empty(dim),
            indices: Vec::new(),
            values: Vec::new(),
            running_max: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn push(&mut self, index: usize, x: &[T], v: T, diag: Option<StepDiagnostics<T>>) -> Result<()> {
        self.points.push(x)?;
        self.indices.push(index);
        let m = self.running_max.last().map_or(v, |&m| m.max(v));
        self.values.push(v);
        self.running_max.push(m);
        self.diagnostics.push(diag);
        Ok(())
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn points(&self) -> &Design<T> {
        &self.points
    }

    pub fn point(&self, n: usize) -> &[T] {
        self.points.point(n)
    }

    /// Candidate index of each evaluation.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `running_max()[n-1] = Mₙ`.
    pub fn running_max(&self) -> &[T] {
        &self.running_max
    }

    pub fn diagnostics(&self) -> &[Option<StepDiagnostics<T>>] {
        &self.diagnostics
    }
}

/// A run stopped early; `trace` holds the evaluations made before `error`.
#[derive(Debug, Clone)]
pub struct Aborted<T> {
    pub error: Error,
    pub trace: OptimizationTrace<T>,
}

impl<T> From<Aborted<T>> for Error {
    fn from(a: Aborted<T>) -> Self {
        a.error
    }
}

fn first_best<T: Real>(items: impl Iterator<Item = (usize, T)>, better: impl Fn(T, T) -> bool) -> Option<Selection<T>> {
    let mut best: Option<Selection<T>> = None;
    for (index, value) in items {
        if best.is_none_or(|b| better(value, b.value)) {
            best = Some(Selection { index, value });
        }
    }
    best
}

fn ei_choice<T: Real>(law: &CandidateLaw<T>, allowed: &[usize]) -> Option<Selection<T>> {
    first_best(allowed.iter().map(|&i| (i, law.ei(i))), |a, b| a > b)
}

fn eiei_choice<T: Real>(law: &CandidateLaw<T>, allowed: &[usize]) -> Option<Selection<T>> {
    let values = law.eiei_many(allowed);
    first_best(allowed.iter().copied().zip(values), |a, b| a < b)
}

/// Candidate with the largest EIₙ (lowest index on ties).
pub fn select_next_ei<T: Real>(post: &GpPosterior<T>, t: Threshold<T>, cand: &CandidateSet<T>) -> Result<Selection<T>> {
    let law = CandidateLaw::new(post, t, cand)?;
    let all: Vec<usize> = (0..cand.len()).collect();
    ei_choice(&law, &all).ok_or(Error::EmptyCandidates)
}

/// Candidate with the smallest ℵₙ (lowest index on ties). The same set is
/// used as the integration sample.
pub fn select_next_eiei<T: Real>(post: &GpPosterior<T>, t: Threshold<T>, cand: &CandidateSet<T>) -> Result<Selection<T>> {
    let law = CandidateLaw::new(post, t, cand)?;
    let all: Vec<usize> = (0..cand.len()).collect();
    eiei_choice(&law, &all).ok_or(Error::EmptyCandidates)
}

/// Runs `budget` evaluations of `objective` restricted to `cand`.
///
/// The first point is the candidate nearest the center of `domain`; each
/// later point is chosen by `policy` among the candidates not yet
/// evaluated, while ℵₙ integrates over all of them. The loop has no
/// randomness.
pub fn run_optimization<T: Real>(
    objective: &mut impl Objective<T>,
    kernel: &MaternKernel<T>,
    domain: &BoxDomain<T>,
    cand: &CandidateSet<T>,
    budget: usize,
    policy: Policy,
) -> std::result::Result<OptimizationTrace<T>, Aborted<T>> {
    let dim = domain.dim();
    let mut trace = OptimizationTrace::new(policy, dim);
    let fail = |error: Error, trace: OptimizationTrace<T>| Err(Aborted { error, trace });
    if cand.points().dim() != dim {
        return fail(Error::DimensionMismatch { expected: dim, found: cand.points().dim() }, trace);
    }
    if budget == 0 || budget > cand.len() {
        return fail(Error::config(format!("budget must be in 1..={}, got {budget}", cand.len())), trace);
    }

    let prior = Matrix::from_fn(cand.len(), cand.len(), |i, j| kernel.cov(cand.point(i), cand.point(j)));
    let mut observed = vec![false; cand.len()];
    let mut post = GpPosterior::prior(kernel.clone(), dim);
    let mut next = Selection { index: cand.nearest(&domain.center()), value: T::nan() };
    let mut diag = None;

    loop {
        let i = next.index;
        if observed[i] {
            return fail(Error::DuplicatePoint(format!("{:?}", cand.point(i))), trace);
        }
        let x = cand.point(i);
        let v = match objective.evaluate(i, x) {
            Ok(v) if v.is_finite() => v,
            Ok(v) => return fail(Error::Objective(format!("non-finite value {v} at candidate {i}")), trace),
            Err(e) => return fail(e, trace),
        };
        observed[i] = true;
        post = match post.update(x, v) {
            Ok(p) => p,
            Err(e) => return fail(e, trace),
        };
        if let Err(e) = trace.push(i, x, v, diag) {
            return fail(e, trace);
        }
        if trace.len() == budget {
            return Ok(trace);
        }

        let t = Threshold(*trace.running_max().last().expect("non-empty trace"));
        let law = CandidateLaw::with_prior(&post, t, cand, &prior);
        let allowed: Vec<usize> = (0..cand.len()).filter(|&j| !observed[j]).collect();
        let choice = match policy {
            Policy::EiMax => ei_choice(&law, &allowed),
            Policy::EieiMin => eiei_choice(&law, &allowed),
        };
        next = match choice {
            Some(s) => s,
            None => return fail(Error::EmptyCandidates, trace),
        };
        diag = Some(StepDiagnostics { integrated_ei: law.integrated_ei(), criterion: next.value });
    }
}

/// Per-step errors of the running estimators against the truth on the
/// grid the trace was run on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepErrors<T> {
    /// `M − Mₙ`
    pub value_error: T,
    /// `‖x★ − x★ₙ‖` with `x★ₙ` the first evaluated point attaining `Mₙ`.
    pub location_error: T,
}

/// `(M − Mₙ, ‖x★ − x★ₙ‖)` for `n = 1, …, len(trace)`, where `values` are
/// the objective values on `grid` and `argmax` the index of `x★`.
pub fn extract_estimators<T: Real>(
    trace: &OptimizationTrace<T>,
    grid: &Design<T>,
    values: &[T],
    argmax: usize,
) -> Result<Vec<StepErrors<T>>> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), found: values.len() });
    }
    if argmax >= grid.len() {
        return Err(Error::domain(format!("argmax index {argmax} outside grid of {}", grid.len())));
    }
    if trace.points().dim() != grid.dim() {
        return Err(Error::DimensionMismatch { expected: grid.dim(), found: trace.points().dim() });
    }
    let m = values[argmax];
    let x_star = grid.point(argmax);
    let mut out = Vec::with_capacity(trace.len());
    let mut best: Option<usize> = None;
    for n in 0..trace.len() {
        let idx = trace.indices()[n];
        if idx >= grid.len() || grid.point(idx) != trace.point(n) || values[idx] != trace.values()[n] {
            return Err(Error::domain(format!("evaluation {} does not match the grid", n + 1)));
        }
        if best.is_none_or(|b| trace.values()[n] > trace.values()[b]) {
            best = Some(n);
        }
        let b = best.expect("set above");
        let dist = trace
            .point(b)
            .iter()
            .zip(x_star)
            .fold(T::zero(), |s, (&a, &c)| s + (a - c) * (a - c))
            .sqrt();
        out.push(StepErrors { value_error: (m - trace.running_max()[n]).max(T::zero()), location_error: dist });
    }
    Ok(out)
}
