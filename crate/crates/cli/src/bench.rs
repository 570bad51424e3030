//! Batch benchmark runner with CSV output and cactus series.
//!
//! Runs every DIMACS file in a directory under every requested mode with a
//! per-instance timeout. Failures of any single run are recorded as UNKNOWN
//! and never abort the batch. Instances may run on several worker threads;
//! records are sorted before emission so the output does not depend on
//! scheduling.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use bcdsat_core::{parse_dimacs, solve_formula, BranchMode, SolveOptions, Verdict};

/// One (instance, mode) run. Column order is the CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub mode: String,
    pub verdict: String,
    pub time_s: f64,
    pub conflicts: u64,
    pub decisions: u64,
    pub quality: Option<f64>,
    pub theta: u64,
}

/// Sorted solve times of the instances a mode solved within the timeout.
#[derive(Debug, Clone, PartialEq)]
pub struct CactusSeries {
    pub mode: String,
    pub times: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub modes: Vec<BranchMode>,
    pub timeout: Duration,
    pub decompose_budget: Duration,
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> BenchConfig {
        BenchConfig {
            modes: vec![BranchMode::None, BranchMode::Bcd3],
            timeout: Duration::from_secs(30),
            decompose_budget: Duration::from_secs(10),
            jobs: 1,
        }
    }
}

#[derive(Debug)]
pub struct BenchOutcome {
    pub records: Vec<RunRecord>,
    pub cactus: Vec<CactusSeries>,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Sat => "SAT",
        Verdict::Unsat => "UNSAT",
        Verdict::Unknown => "UNKNOWN",
    }
}

/// DIMACS files in the directory, sorted by name.
pub fn discover_instances(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| e.eq_ignore_ascii_case("cnf") || e.eq_ignore_ascii_case("dimacs"))
        })
        .collect();
    files.sort();
    Ok(files)
}

fn run_one(path: &Path, mode: BranchMode, cfg: &BenchConfig) -> RunRecord {
    let instance = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let unknown = |time_s: f64| RunRecord {
        instance: instance.clone(),
        mode: mode.to_string(),
        verdict: "UNKNOWN".into(),
        time_s,
        conflicts: 0,
        decisions: 0,
        quality: None,
        theta: 0,
    };

    let text = match fs::read(path) {
        Ok(t) => t,
        Err(_) => return unknown(0.0),
    };
    let parsed = match parse_dimacs(&text[..]) {
        Ok(p) => p,
        Err(_) => return unknown(0.0),
    };
    let mut opts = SolveOptions {
        mode,
        decompose_budget: cfg.decompose_budget,
        ..SolveOptions::default()
    };
    opts.engine.max_time = Some(cfg.timeout);
    match solve_formula(&parsed.formula, &opts, None) {
        Ok(out) => RunRecord {
            instance,
            mode: mode.to_string(),
            verdict: verdict_name(out.verdict).into(),
            time_s: out.stats.wall.as_secs_f64(),
            conflicts: out.stats.conflicts,
            decisions: out.stats.decisions,
            quality: out.quality,
            theta: out.theta,
        },
        Err(_) => unknown(0.0),
    }
}

/// Runs the whole directory under every mode.
pub fn bench_run(dir: &Path, cfg: &BenchConfig) -> io::Result<BenchOutcome> {
    let instances = discover_instances(dir)?;
    let mut tasks: Vec<(PathBuf, BranchMode)> = Vec::new();
    for path in &instances {
        for &mode in &cfg.modes {
            tasks.push((path.clone(), mode));
        }
    }

    let records = Mutex::new(Vec::with_capacity(tasks.len()));
    let next = AtomicUsize::new(0);
    let workers = cfg.jobs.max(1).min(tasks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let (path, mode) = &tasks[i];
                let record = run_one(path, *mode, cfg);
                records.lock().expect("worker poisoned the record list").push(record);
            });
        }
    });

    let mut records = records.into_inner().expect("workers finished");
    records.sort_by(|a, b| a.instance.cmp(&b.instance).then(a.mode.cmp(&b.mode)));
    let cactus = cactus_from_records(&records);
    Ok(BenchOutcome { records, cactus })
}

/// Per-mode sorted solve times of solved (SAT or UNSAT) instances.
pub fn cactus_from_records(records: &[RunRecord]) -> Vec<CactusSeries> {
    let mut modes: Vec<String> = records.iter().map(|r| r.mode.clone()).collect();
    modes.sort();
    modes.dedup();
    modes
        .into_iter()
        .map(|mode| {
            let mut times: Vec<f64> = records
                .iter()
                .filter(|r| r.mode == mode && r.verdict != "UNKNOWN")
                .map(|r| r.time_s)
                .collect();
            times.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
            CactusSeries { mode, times }
        })
        .collect()
}

/// Instances where two modes returned contradictory verdicts.
pub fn verdict_contradictions(records: &[RunRecord]) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for a in records {
        for b in records {
            if a.instance == b.instance
                && a.mode < b.mode
                && a.verdict != "UNKNOWN"
                && b.verdict != "UNKNOWN"
                && a.verdict != b.verdict
            {
                out.push((a.instance.clone(), a.mode.clone(), b.mode.clone()));
            }
        }
    }
    out
}

pub fn write_csv<W: Write>(records: &[RunRecord], sink: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(source: R) -> csv::Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(source);
    r.deserialize().collect()
}
