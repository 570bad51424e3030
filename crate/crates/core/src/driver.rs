//! End-to-end solving pipeline.
//!
//! Simplify, decompose, resolve the branching threshold, attach the policy,
//! run the engine, and compose the full model back over the original
//! variables. Proof preamble lines (root units and clauses rewritten by
//! simplification) are emitted before the engine takes over the sink.

use std::collections::HashSet;
use std::io::Write;
use std::time::Duration;

use crate::decomp::{improve_decomposition, pure_decompose};
use crate::drat::DratWriter;
use crate::engine::{SolveStats, Solver, SolverConfig, SolverError, Verdict};
use crate::formula::Formula;
use crate::lit::Lit;
use crate::policy::{attach_policy, BranchMode, ModeConfig, WindowDecision};
use crate::simplify::simplify_root;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub mode: BranchMode,
    /// Overrides the mode formula's threshold when set.
    pub theta_override: Option<u64>,
    /// Time budget for the greedy decomposition improvement.
    pub decompose_budget: Duration,
    pub engine: SolverConfig,
    /// Record window-restricted decisions for inspection.
    pub record_window: bool,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions {
            mode: BranchMode::None,
            theta_override: None,
            decompose_budget: Duration::from_secs(200),
            engine: SolverConfig::default(),
            record_window: false,
        }
    }
}

#[derive(Debug)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    /// Model over all original variables (SAT only). Root units are applied
    /// and never-occurring variables default to false.
    pub model: Option<Vec<bool>>,
    pub stats: SolveStats,
    /// Decomposition quality, when a decomposition was computed.
    pub quality: Option<f64>,
    /// The threshold the policy ran with (0 = restriction disabled).
    pub theta: u64,
    pub decision_trace: Option<Vec<Lit>>,
    pub window_trace: Option<Vec<WindowDecision>>,
}

/// Solves a formula under the given options.
///
/// When `proof` is set, an UNSAT run writes a DRAT proof checkable against
/// the original formula.
pub fn solve_formula(
    f: &Formula,
    opts: &SolveOptions,
    proof: Option<Box<dyn Write>>,
) -> Result<SolveOutcome, SolverError> {
    let simplified = simplify_root(f);
    let n = simplified.num_clauses() as u64;
    let m = simplified.occurring_var_count() as u64;

    // Preamble: root units and clauses rewritten by simplification are unit
    // propagation consequences of the original formula, so logging them as
    // learnt lines keeps the rest of the proof checkable against the input.
    let mut proof_sink: Option<Box<dyn Write>> = None;
    if let Some(sink) = proof {
        let mut w = DratWriter::new(sink);
        for &u in &simplified.units {
            w.learn(&[u])?;
        }
        if simplified.trivially_unsat {
            w.learn(&[])?;
            w.flush()?;
        } else {
            let original: HashSet<Vec<Lit>> = f
                .clauses
                .iter()
                .map(|c| {
                    let mut lits = c.lits().to_vec();
                    lits.sort_unstable();
                    lits.dedup();
                    lits
                })
                .collect();
            for c in &simplified.clauses {
                if !original.contains(c.lits()) {
                    w.learn(c.lits())?;
                }
            }
        }
        proof_sink = Some(w.into_inner());
    }

    if simplified.trivially_unsat {
        return Ok(SolveOutcome {
            verdict: Verdict::Unsat,
            model: None,
            stats: SolveStats::default(),
            quality: None,
            theta: 0,
            decision_trace: None,
            window_trace: None,
        });
    }

    let mut quality = None;
    let mut policy = if opts.mode != BranchMode::None {
        let d = improve_decomposition(
            &pure_decompose(&simplified),
            &simplified,
            opts.decompose_budget,
        );
        quality = Some(d.quality());
        let theta = opts
            .theta_override
            .unwrap_or_else(|| crate::policy::resolve_theta(opts.mode, n, m));
        let cfg = ModeConfig::with_theta(opts.mode, theta);
        let mut p = attach_policy(&simplified, &d, cfg)
            .expect("decompositions produced here always verify");
        if opts.record_window {
            p.enable_trace();
        }
        Some(p)
    } else {
        None
    };
    let theta = policy.as_ref().map_or(0, |p| p.config().theta);

    let mut solver = Solver::new(&simplified, opts.engine.clone());
    if let Some(sink) = proof_sink {
        solver.set_proof(sink);
    }
    let result = match &mut policy {
        Some(p) => solver.solve_with(p)?,
        None => solver.solve()?,
    };

    let model = result.model.map(|engine_model| {
        let mut model = vec![false; f.num_vars];
        model[..engine_model.len()].copy_from_slice(&engine_model);
        for &u in &simplified.units {
            model[u.var().index()] = u.is_positive();
        }
        model
    });

    Ok(SolveOutcome {
        verdict: result.verdict,
        model,
        stats: result.stats,
        quality,
        theta,
        decision_trace: result.decision_trace,
        window_trace: policy
            .as_mut()
            .filter(|_| opts.record_window)
            .map(|p| p.take_trace()),
    })
}
