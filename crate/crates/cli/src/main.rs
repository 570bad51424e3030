use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use bcdsat_cli::{
    bench_run, brute_force, check_model, check_proof, parse_drat, parse_model, write_csv,
    BenchConfig,
};
use bcdsat_core::{
    improve_decomposition, parse_dimacs, pure_decompose, simplify_root, solve_formula,
    verify_decomposition, write_dimacs, BranchMode, Formula, SolveOptions, Verdict,
};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_UNKNOWN: u8 = 0;
const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(
    name = "bcdsat",
    about = "CDCL SAT solver with blocked-clause-decomposition guided branching",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    None,
    Bcd1,
    Bcd2,
    Bcd3,
}

impl From<ModeArg> for BranchMode {
    fn from(m: ModeArg) -> BranchMode {
        match m {
            ModeArg::None => BranchMode::None,
            ModeArg::Bcd1 => BranchMode::Bcd1,
            ModeArg::Bcd2 => BranchMode::Bcd2,
            ModeArg::Bcd3 => BranchMode::Bcd3,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a DIMACS CNF file.
    Solve {
        file: PathBuf,
        /// Branching mode.
        #[arg(long, value_enum, default_value = "none")]
        mode: ModeArg,
        /// Override the mode formula's conflict threshold.
        #[arg(long)]
        theta: Option<u64>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Write a DRAT proof here (UNSAT runs).
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Nonzero seeds randomize initial phases.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Time budget in seconds for decomposition improvement.
        #[arg(long, default_value_t = 200.0)]
        decompose_budget: f64,
    },
    /// Decompose a formula into two blocked sets, written as DIMACS files.
    Decompose {
        file: PathBuf,
        /// Output prefix; writes <prefix>.large.cnf and <prefix>.small.cnf.
        #[arg(long)]
        out_prefix: Option<PathBuf>,
        #[arg(long, default_value_t = 200.0)]
        decompose_budget: f64,
    },
    /// Run every instance in a directory under several modes, emitting CSV.
    Bench {
        dir: PathBuf,
        /// Comma-separated mode list.
        #[arg(long, default_value = "none,bcd3")]
        modes: String,
        /// Per-instance timeout in seconds.
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 10.0)]
        decompose_budget: f64,
    },
    /// Check a model ("v" lines or bare literals) against a formula.
    CheckModel { cnf: PathBuf, model: PathBuf },
    /// Forward-check a DRAT proof against a formula.
    CheckProof { cnf: PathBuf, drat: PathBuf },
    /// Ground-truth verdict by truth-table enumeration (small formulas).
    Oracle { file: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load_formula(path: &Path) -> Result<Formula, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = parse_dimacs(&bytes[..]).map_err(|e| format!("{}: {e}", path.display()))?;
    for w in &parsed.warnings {
        println!("c warning: {w}");
    }
    Ok(parsed.formula)
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Solve {
            file,
            mode,
            theta,
            timeout,
            proof,
            seed,
            decompose_budget,
        } => {
            let formula = load_formula(&file)?;
            let mode: BranchMode = mode.into();
            if theta.is_some() && mode == BranchMode::None {
                println!("c warning: --theta has no effect with --mode none");
            }
            let mut opts = SolveOptions {
                mode,
                theta_override: theta,
                decompose_budget: Duration::from_secs_f64(decompose_budget),
                ..SolveOptions::default()
            };
            opts.engine.max_time = timeout.map(Duration::from_secs_f64);
            opts.engine.seed = seed;
            let proof_sink: Option<Box<dyn Write>> = match &proof {
                Some(p) => Some(Box::new(BufWriter::new(
                    File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
                ))),
                None => None,
            };

            let out = solve_formula(&formula, &opts, proof_sink)
                .map_err(|e| format!("solver failed: {e}"))?;
            if let Some(q) = out.quality {
                println!("c decomposition quality = {q:.6}");
            }
            if mode != BranchMode::None {
                println!(
                    "c theta = {}{}",
                    out.theta,
                    if out.theta == 0 { " (policy disabled)" } else { "" }
                );
            }
            println!(
                "c conflicts = {} decisions = {} propagations = {} restarts = {} time = {:.3}s",
                out.stats.conflicts,
                out.stats.decisions,
                out.stats.propagations,
                out.stats.restarts,
                out.stats.wall.as_secs_f64()
            );
            match out.verdict {
                Verdict::Sat => {
                    println!("s SATISFIABLE");
                    print_model(&out.model.expect("SAT verdicts carry a model"));
                    Ok(EXIT_SAT)
                }
                Verdict::Unsat => {
                    println!("s UNSATISFIABLE");
                    Ok(EXIT_UNSAT)
                }
                Verdict::Unknown => {
                    println!("s UNKNOWN");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }

        Cmd::Decompose {
            file,
            out_prefix,
            decompose_budget,
        } => {
            let formula = load_formula(&file)?;
            let simplified = simplify_root(&formula);
            if simplified.trivially_unsat {
                return Err("formula is trivially unsatisfiable after simplification".into());
            }
            let started = std::time::Instant::now();
            let d = improve_decomposition(
                &pure_decompose(&simplified),
                &simplified,
                Duration::from_secs_f64(decompose_budget),
            );
            let elapsed = started.elapsed();
            let verified = verify_decomposition(&d, &simplified);
            let prefix = out_prefix.unwrap_or_else(|| file.with_extension(""));
            let write_set = |indices: &[usize], suffix: &str| -> Result<PathBuf, String> {
                let mut part = Formula::new(simplified.num_vars);
                for &ci in indices {
                    part.clauses.push(simplified.clauses[ci].clone());
                }
                let path = PathBuf::from(format!("{}.{suffix}.cnf", prefix.display()));
                let out = File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                write_dimacs(&part, BufWriter::new(out))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(path)
            };
            let large_path = write_set(&d.large, "large")?;
            let small_path = write_set(&d.small, "small")?;
            println!(
                "quality={:.6} large={} small={} verified={} time={:.3}s files={},{}",
                d.quality(),
                d.large.len(),
                d.small.len(),
                verified,
                elapsed.as_secs_f64(),
                large_path.display(),
                small_path.display()
            );
            Ok(0)
        }

        Cmd::Bench {
            dir,
            modes,
            timeout,
            csv,
            jobs,
            decompose_budget,
        } => {
            let modes: Vec<BranchMode> = modes
                .split(',')
                .map(|m| m.trim().parse::<BranchMode>())
                .collect::<Result<_, _>>()?;
            if modes.is_empty() {
                return Err("no modes given".into());
            }
            let cfg = BenchConfig {
                modes,
                timeout: Duration::from_secs_f64(timeout),
                decompose_budget: Duration::from_secs_f64(decompose_budget),
                jobs,
            };
            let out = bench_run(&dir, &cfg).map_err(|e| format!("{}: {e}", dir.display()))?;
            match &csv {
                Some(path) => {
                    let sink = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    write_csv(&out.records, BufWriter::new(sink))
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    println!("c wrote {} records to {}", out.records.len(), path.display());
                }
                None => {
                    write_csv(&out.records, std::io::stdout().lock())
                        .map_err(|e| format!("csv: {e}"))?;
                }
            }
            for series in &out.cactus {
                let times: Vec<String> =
                    series.times.iter().map(|t| format!("{t:.3}")).collect();
                println!(
                    "c cactus {} solved={} times=[{}]",
                    series.mode,
                    series.times.len(),
                    times.join(", ")
                );
            }
            let contradictions = bcdsat_cli::verdict_contradictions(&out.records);
            if !contradictions.is_empty() {
                return Err(format!("contradictory verdicts: {contradictions:?}"));
            }
            Ok(0)
        }

        Cmd::CheckModel { cnf, model } => {
            let formula = load_formula(&cnf)?;
            let text =
                fs::read_to_string(&model).map_err(|e| format!("{}: {e}", model.display()))?;
            let assignment =
                parse_model(&text, formula.num_vars).map_err(|e| e.to_string())?;
            if check_model(&formula, &assignment).map_err(|e| e.to_string())? {
                println!("MODEL VERIFIED");
                Ok(0)
            } else {
                println!("MODEL INVALID");
                Ok(EXIT_ERROR)
            }
        }

        Cmd::CheckProof { cnf, drat } => {
            let formula = load_formula(&cnf)?;
            let text =
                fs::read_to_string(&drat).map_err(|e| format!("{}: {e}", drat.display()))?;
            let proof = parse_drat(&text).map_err(|e| e.to_string())?;
            let result = check_proof(&formula, &proof);
            if result.unmatched_deletes > 0 {
                println!(
                    "c warning: {} delete lines matched no clause",
                    result.unmatched_deletes
                );
            }
            if result.accepted {
                println!("PROOF VERIFIED");
                Ok(0)
            } else {
                match result.failed_line {
                    Some(line) => println!("PROOF REJECTED: line {line} is not RUP"),
                    None => println!("PROOF REJECTED: no empty clause derived"),
                }
                Ok(EXIT_ERROR)
            }
        }

        Cmd::Oracle { file } => {
            let formula = load_formula(&file)?;
            match brute_force(&formula).map_err(|e| e.to_string())? {
                Verdict::Sat => {
                    println!("s SATISFIABLE");
                    Ok(EXIT_SAT)
                }
                _ => {
                    println!("s UNSATISFIABLE");
                    Ok(EXIT_UNSAT)
                }
            }
        }
    }
}

fn print_model(model: &[bool]) {
    let mut line = String::from("v");
    for (i, &value) in model.iter().enumerate() {
        let lit = if value {
            (i + 1).to_string()
        } else {
            format!("-{}", i + 1)
        };
        if line.len() + lit.len() + 1 > 78 {
            println!("{line}");
            line = String::from("v");
        }
        line.push(' ');
        line.push_str(&lit);
    }
    line.push_str(" 0");
    println!("{line}");
}
