use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use eiei::acquisition::{CandidateLaw, CandidateSet, Threshold};
use eiei::benchlab::{
    aggregate, fig2_function, generate_testbed, read_records_csv, run_benchmark, write_aggregate_csv,
    write_records_csv, CurvePoint,
};
use eiei::gp::{condition, Design};
use eiei::strategy::{run_optimization, BoxDomain, GridValues, Objective, OptimizationTrace};

use crate::config;
use crate::CliError;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    let f = File::create(&path).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(BufWriter::new(f))
}

/// Reads `x1,…,xd,f` rows; returns the points and their values.
fn read_objective_file(path: &Path, domain: &BoxDomain<f64>) -> Result<(CandidateSet<f64>, Vec<f64>), CliError> {
    let bad = |msg: String| CliError::Config(format!("{}: {msg}", path.display()));
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let d = domain.dim();
    let mut points = Design::empty(d);
    let mut values = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        if row.len() != d + 1 {
            return Err(bad(format!("row {} has {} fields, expected {} (x1..x{d},f)", i + 1, row.len(), d + 1)));
        }
        let nums = row
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| bad(format!("row {}: `{s}` is not a number", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        let x = &nums[..d];
        if x.iter().zip(domain.lower().iter().zip(domain.upper())).any(|(&v, (&a, &b))| !(v >= a && v <= b)) {
            return Err(bad(format!("row {}: point lies outside the domain", i + 1)));
        }
        points.push(x).map_err(|e| bad(format!("row {}: {e}", i + 1)))?;
        values.push(nums[d]);
    }
    if let Some(j) = points.first_duplicate() {
        return Err(bad(format!("row {} repeats an earlier point", j + 1)));
    }
    let cand = CandidateSet::new(points, domain.volume()).map_err(|e| bad(e.to_string()))?;
    Ok((cand, values))
}

struct Fig2;

impl Objective<f64> for Fig2 {
    fn evaluate(&mut self, _index: usize, x: &[f64]) -> eiei::Result<f64> {
        fig2_function(x[0])
    }
}

fn check_fig2_domain(domain: &BoxDomain<f64>) -> Result<(), CliError> {
    if domain.dim() != 1 || domain.lower()[0] < -1.0 || domain.upper()[0] > 1.0 {
        return Err(CliError::Config("the fig2 objective needs a 1-D domain inside [-1, 1]".into()));
    }
    Ok(())
}

fn write_trace(out: &Path, trace: &OptimizationTrace<f64>) -> Result<(), CliError> {
    let mut w = create(out, "trace.csv")?;
    let d = trace.points().dim();
    let xs: Vec<String> = (1..=d).map(|k| if d == 1 { "x".into() } else { format!("x{k}") }).collect();
    writeln!(w, "n,{},f,running_max,criterion_value", xs.join(","))?;
    for n in 0..trace.len() {
        let x: Vec<String> = trace.point(n).iter().map(|&v| num(v)).collect();
        let crit = trace.diagnostics()[n].map(|s| num(s.criterion)).unwrap_or_default();
        writeln!(w, "{},{},{},{},{}", n + 1, x.join(","), num(trace.values()[n]), num(trace.running_max()[n]), crit)?;
    }
    w.flush()?;
    Ok(())
}

pub fn optimize(path: &Path, out: &Path, seed: Option<u64>) -> Result<(), CliError> {
    let (raw, base) = config::load(path)?;
    let opt = raw.optimize.as_ref().ok_or_else(|| CliError::Config("missing [optimize] section".into()))?;
    let seed = raw.seed(seed)?;
    let policy = config::policy(&opt.policy)?;
    let domain = raw.domain()?;
    let kernel = raw.kernel(domain.dim())?;
    if opt.budget == 0 {
        return Err(CliError::Config("optimize.budget must be at least 1".into()));
    }

    let result = if opt.objective == "fig2" {
        check_fig2_domain(&domain)?;
        let cand = raw.candidates(&domain, seed)?;
        check_budget(opt.budget, &cand)?;
        run_optimization(&mut Fig2, &kernel, &domain, &cand, opt.budget, policy)
    } else {
        let (cand, values) = read_objective_file(&base.join(&opt.objective), &domain)?;
        check_budget(opt.budget, &cand)?;
        run_optimization(&mut GridValues(&values), &kernel, &domain, &cand, opt.budget, policy)
    };
    match result {
        Ok(trace) => {
            write_trace(out, &trace)?;
            println!(
                "{policy}: {} evaluations, best value {}",
                trace.len(),
                trace.running_max().last().copied().unwrap_or(f64::NAN)
            );
            Ok(())
        }
        Err(aborted) => {
            write_trace(out, &aborted.trace)?;
            eprintln!("run stopped after {} evaluations; partial trace written", aborted.trace.len());
            Err(aborted.error.into())
        }
    }
}

fn check_budget(budget: usize, cand: &CandidateSet<f64>) -> Result<(), CliError> {
    if budget > cand.len() {
        return Err(CliError::Config(format!("budget {budget} exceeds the {} candidates", cand.len())));
    }
    Ok(())
}

pub fn demo_criteria(path: &Path, out: &Path, seed: Option<u64>) -> Result<(), CliError> {
    let (raw, _) = config::load(path)?;
    let demo = raw.demo.as_ref().ok_or_else(|| CliError::Config("missing [demo] section".into()))?;
    let seed = raw.seed(seed)?;
    let domain = raw.domain()?;
    if domain.dim() != 1 {
        return Err(CliError::Config(format!("demo-criteria needs a 1-D domain, got dimension {}", domain.dim())));
    }
    let kernel = raw.kernel(1)?;
    let cand = raw.candidates(&domain, seed)?;
    if demo.design.is_empty() {
        return Err(CliError::Config("demo.design must list at least one point".into()));
    }
    let values = match &demo.values {
        Some(v) if v.len() == demo.design.len() => v.clone(),
        Some(v) => {
            return Err(CliError::Config(format!(
                "demo.values has {} entries for {} design points",
                v.len(),
                demo.design.len()
            )))
        }
        None => {
            check_fig2_domain(&domain)?;
            demo.design.iter().map(|&x| fig2_function(x)).collect::<eiei::Result<Vec<_>>>()?
        }
    };
    let design = Design::from_flat(1, demo.design.clone()).map_err(|e| CliError::Config(format!("demo.design: {e}")))?;
    let post = condition(kernel, design, values).map_err(|e| match e {
        eiei::Error::DuplicatePoint(p) => CliError::Config(format!("demo.design repeats {p}")),
        other => other.into(),
    })?;
    let t = Threshold::from_posterior(&post).expect("non-empty design");
    let law = CandidateLaw::new(&post, t, &cand)?;

    let all: Vec<usize> = (0..cand.len()).collect();
    let aleph = law.eiei_many(&all);
    let mut sel = 0;
    for (i, &a) in aleph.iter().enumerate() {
        if a < aleph[sel] {
            sel = i;
        }
    }
    let h = law.integrated_ei();

    let mut w = create(out, "criteria.csv")?;
    writeln!(w, "# integrated_ei={}", num(h))?;
    writeln!(w, "# eiei_argmin_x={}", num(cand.point(sel)[0]))?;
    writeln!(w, "x,posterior_mean,posterior_sd,EI,EEI_diag,aleph")?;
    for i in 0..cand.len() {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            num(cand.point(i)[0]),
            num(law.mean(i)),
            num(law.sd(i)),
            num(law.ei(i)),
            num(law.eei(sel, i)),
            num(aleph[i])
        )?;
    }
    w.flush()?;
    println!("integrated EI {h:.6e}; EIEI picks x = {:.6}", cand.point(sel)[0]);
    Ok(())
}

fn print_summary(curves: &[CurvePoint<f64>]) {
    let budget = curves.iter().map(|c| c.n).max().unwrap_or(0);
    println!(
        "{:<8} {:>4} {:>6}  {:>24}  {:>24}",
        "strategy", "n", "paths", "value error (± se)", "location error (± se)"
    );
    for c in curves.iter().filter(|c| c.n == 1 || c.n % 10 == 0 || c.n == budget) {
        println!(
            "{:<8} {:>4} {:>6}  {:>12.4e} ± {:<9.2e}  {:>12.4e} ± {:<9.2e}",
            c.strategy.name(),
            c.n,
            c.paths,
            c.mean_value_error,
            c.se_value_error,
            c.mean_location_error,
            c.se_location_error
        );
    }
}

pub fn bench_run(path: &Path, out: &Path, seed: Option<u64>, threads: Option<usize>) -> Result<(), CliError> {
    let (raw, _) = config::load(path)?;
    let seed = raw.seed(seed)?;
    let (cfg, strategies) = raw.testbed(seed)?;
    let testbed = generate_testbed(&cfg)?;
    let outcome = run_benchmark(&testbed, &strategies, cfg.budget, threads)?;
    for f in &outcome.failures {
        eprintln!("path {} dropped: {} failed: {}", f.path_id, f.strategy, f.error);
    }
    let curves = aggregate(&outcome.records)?;

    let mut w = create(out, "records.csv")?;
    write_records_csv(&mut w, &outcome.records)?;
    w.flush()?;
    let mut w = create(out, "aggregate.csv")?;
    write_aggregate_csv(&mut w, &curves)?;
    w.flush()?;
    print_summary(&curves);
    Ok(())
}

pub fn bench_aggregate(records: &Path, out: &Path) -> Result<(), CliError> {
    let f = File::open(records).map_err(|e| CliError::Io(format!("cannot read {}: {e}", records.display())))?;
    let recs = read_records_csv(BufReader::new(f))?;
    let curves = aggregate(&recs)?;
    let mut w = create(out, "aggregate.csv")?;
    write_aggregate_csv(&mut w, &curves)?;
    w.flush()?;
    print_summary(&curves);
    Ok(())
}

