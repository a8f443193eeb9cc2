use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::benchlab::BenchmarkRecord;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::strategy::Policy;

const RECORDS_HEADER: &str = "path_id,strategy,n,value_error,location_error";
const AGGREGATE_HEADER: &str = "strategy,n,mean_value_error,se_value_error,mean_location_error,se_location_error";

/// Mean error curves (over paths) of one strategy at one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    pub strategy: Policy,
    pub n: usize,
    pub paths: usize,
    pub mean_value_error: T,
    pub se_value_error: T,
    pub mean_location_error: T,
    pub se_location_error: T,
}

/// Per-strategy, per-step means and standard errors over paths, ordered by
/// strategy then `n`. Every strategy must cover the same paths, each with
/// steps `1..=budget` exactly once.
pub fn aggregate<T: Real>(records: &[BenchmarkRecord<T>]) -> Result<Vec<CurvePoint<T>>> {
    if records.is_empty() {
        return Err(Error::Benchmark("no records to aggregate".into()));
    }
    // strategy -> path -> n -> (value, location)
    let mut table: BTreeMap<Policy, BTreeMap<usize, BTreeMap<usize, (T, T)>>> = BTreeMap::new();
    for r in records {
        let steps = table.entry(r.strategy).or_default().entry(r.path_id).or_default();
        if steps.insert(r.n, (r.value_error, r.location_error)).is_some() {
            return Err(Error::Benchmark(format!("duplicate record: path {} {} n={}", r.path_id, r.strategy, r.n)));
        }
    }
    let reference = table.values().next().expect("non-empty");
    let paths: Vec<usize> = reference.keys().copied().collect();
    let budget = reference.values().next().expect("non-empty").len();
    for (s, by_path) in &table {
        if by_path.keys().copied().ne(paths.iter().copied()) {
            return Err(Error::Benchmark(format!("strategy {s} does not cover the same paths")));
        }
        for (p, steps) in by_path {
            if steps.keys().copied().ne(1..=budget) {
                return Err(Error::Benchmark(format!("path {p} under {s} does not have steps 1..={budget}")));
            }
        }
    }

    let k = paths.len();
    let kt = T::from_usize_lossy(k);
    let stats = |xs: &[T]| {
        let mean = xs.iter().copied().sum::<T>() / kt;
        let se = if k > 1 {
            let ss = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>();
            (ss / T::from_usize_lossy(k - 1) / kt).sqrt()
        } else {
            T::zero()
        };
        (mean, se)
    };
    let mut out = Vec::with_capacity(table.len() * budget);
    for (&strategy, by_path) in &table {
        for n in 1..=budget {
            let v: Vec<T> = by_path.values().map(|s| s[&n].0).collect();
            let l: Vec<T> = by_path.values().map(|s| s[&n].1).collect();
            let (mv, sv) = stats(&v);
            let (ml, sl) = stats(&l);
            out.push(CurvePoint {
                strategy,
                n,
                paths: k,
                mean_value_error: mv,
                se_value_error: sv,
                mean_location_error: ml,
                se_location_error: sl,
            });
        }
    }
    Ok(out)
}

fn num<T: Real>(x: T) -> String {
    format!("{:.16e}", x.to_f64_lossy())
}

pub fn write_records_csv<T: Real>(w: &mut impl Write, records: &[BenchmarkRecord<T>]) -> std::io::Result<()> {
    writeln!(w, "{RECORDS_HEADER}")?;
    for r in records {
        writeln!(w, "{},{},{},{},{}", r.path_id, r.strategy, r.n, num(r.value_error), num(r.location_error))?;
    }
    Ok(())
}

pub fn write_aggregate_csv<T: Real>(w: &mut impl Write, curves: &[CurvePoint<T>]) -> std::io::Result<()> {
    writeln!(w, "{AGGREGATE_HEADER}")?;
    for c in curves {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            c.strategy,
            c.n,
            num(c.mean_value_error),
            num(c.se_value_error),
            num(c.mean_location_error),
            num(c.se_location_error)
        )?;
    }
    Ok(())
}

/// Parses the output of [`write_records_csv`].
pub fn read_records_csv(r: impl BufRead) -> Result<Vec<BenchmarkRecord<f64>>> {
    let bad = |line: usize, what: &str| Error::config(format!("records CSV line {line}: {what}"));
    let mut lines = r.lines().enumerate();
    match lines.next() {
        Some((_, Ok(h))) if h.trim() == RECORDS_HEADER => {}
        _ => return Err(bad(1, "expected header `path_id,strategy,n,value_error,location_error`")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| bad(i + 1, &e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 5 {
            return Err(bad(i + 1, "expected 5 fields"));
        }
        let strategy = Policy::from_name(f[1]).ok_or_else(|| bad(i + 1, "unknown strategy"))?;
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad(i + 1, "bad integer"));
        let real = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1, "bad number"));
        out.push(BenchmarkRecord {
            path_id: int(f[0])?,
            strategy,
            n: int(f[2])?,
            value_error: real(f[3])?,
            location_error: real(f[4])?,
        });
    }
    Ok(out)
}
