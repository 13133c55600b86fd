//! Solver comparison over TSPLIB instances: cost, percent gap to the known
//! optimum, and median wall-clock runtime per solver.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{parse_tsplib, percent_gap, LocalSearchOptions, SolverKind};

pub const CSV_HEADER: [&str; 7] = [
    "name",
    "n",
    "optimal",
    "solver",
    "cost",
    "gap_pct",
    "runtime_s",
];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchInstance {
    pub path: PathBuf,
    pub known_optimum: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub solvers: Vec<SolverKind>,
    pub repetitions: usize,
    pub start: usize,
    pub local_search: LocalSearchOptions,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            solvers: SolverKind::ALL.to_vec(),
            repetitions: 1,
            start: 0,
            local_search: LocalSearchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub optimal: Option<i64>,
    pub solver: SolverKind,
    pub cost: i64,
    pub gap_pct: Option<f64>,
    pub runtime_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchFailure {
    pub path: PathBuf,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub failures: Vec<BenchFailure>,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

/// Runs every solver on every instance. Instances that fail to parse or
/// solve are recorded in `failures` and the rest still run.
pub fn run_benchmark(instances: &[BenchInstance], config: &BenchConfig) -> BenchReport {
    let mut report = BenchReport::default();
    let reps = config.repetitions.max(1);
    for bench in instances {
        let result = (|| -> Result<Vec<BenchRow>> {
            let mut inst = parse_tsplib(File::open(&bench.path)?)?;
            inst.known_optimum = bench.known_optimum;
            let m = inst.matrix();
            let mut rows = Vec::new();
            for &solver in &config.solvers {
                let mut times = Vec::with_capacity(reps);
                let mut cost = None;
                for _ in 0..reps {
                    let t0 = Instant::now();
                    let tour = solver.solve(&m, config.start, &config.local_search)?;
                    times.push(t0.elapsed().as_secs_f64());
                    cost = Some(tour.cost);
                }
                let cost = cost.expect("at least one repetition");
                let gap_pct = inst
                    .known_optimum
                    .map(|opt| percent_gap(cost as f64, opt as f64))
                    .transpose()?;
                rows.push(BenchRow {
                    name: inst.name.clone(),
                    n: inst.n,
                    optimal: inst.known_optimum,
                    solver,
                    cost,
                    gap_pct,
                    runtime_s: median(times),
                });
            }
            Ok(rows)
        })();
        match result {
            Ok(rows) => report.rows.extend(rows),
            Err(e) => report.failures.push(BenchFailure {
                path: bench.path.clone(),
                error: e.to_string(),
            }),
        }
    }
    report
}

/// Reads a JSON object mapping instance name to known optimal tour length.
pub fn load_optima(mut source: impl Read) -> Result<BTreeMap<String, i64>> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    serde_json::from_str(&text).map_err(crate::region::json_error)
}

/// Writes the report rows as CSV with the [`CSV_HEADER`] columns.
pub fn write_csv(report: &BenchReport, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in &report.rows {
        w.write_record([
            r.name.clone(),
            r.n.to_string(),
            r.optimal.map(|o| o.to_string()).unwrap_or_default(),
            r.solver.to_string(),
            r.cost.to_string(),
            r.gap_pct.map(|g| format!("{g:.4}")).unwrap_or_default(),
            format!("{:.6}", r.runtime_s),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Human-readable table: one line per instance, cost and runtime columns per solver.
pub fn format_table(report: &BenchReport) -> String {
    let mut solvers: Vec<SolverKind> = report.rows.iter().map(|r| r.solver).collect();
    solvers.sort();
    solvers.dedup();
    let mut names: Vec<(&str, usize)> = Vec::new();
    for r in &report.rows {
        if !names.iter().any(|(n, _)| *n == r.name) {
            names.push((&r.name, r.n));
        }
    }

    let mut out = String::new();
    let _ = write!(out, "{:<12} {:>6} {:>10}", "instance", "nodes", "optimal");
    for s in &solvers {
        let _ = write!(out, " {:>14} {:>8}", format!("cost:{s}"), "gap%");
    }
    for s in &solvers {
        let _ = write!(out, " {:>16}", format!("time_s:{s}"));
    }
    out.push('\n');
    for (name, n) in names {
        let row_for = |s: SolverKind| report.rows.iter().find(|r| r.name == name && r.solver == s);
        let optimal = report
            .rows
            .iter()
            .find(|r| r.name == name)
            .and_then(|r| r.optimal)
            .map(|o| o.to_string())
            .unwrap_or_else(|| "-".into());
        let _ = write!(out, "{name:<12} {n:>6} {optimal:>10}");
        for &s in &solvers {
            match row_for(s) {
                Some(r) => {
                    let gap = r
                        .gap_pct
                        .map(|g| format!("{g:.2}"))
                        .unwrap_or_else(|| "-".into());
                    let _ = write!(out, " {:>14} {gap:>8}", r.cost);
                }
                None => {
                    let _ = write!(out, " {:>14} {:>8}", "-", "-");
                }
            }
        }
        for &s in &solvers {
            match row_for(s) {
                Some(r) => {
                    let _ = write!(out, " {:>16.3}", r.runtime_s);
                }
                None => {
                    let _ = write!(out, " {:>16}", "-");
                }
            }
        }
        out.push('\n');
    }
    for f in &report.failures {
        let _ = writeln!(out, "FAILED {}: {}", f.path.display(), f.error);
    }
    out
}

/// Lists `.tsp` files in `dir`, sorted by file name.
pub fn tsp_files_in(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "tsp"))
        .collect();
    files.sort();
    Ok(files)
}
