//! Engine verdicts against exhaustive enumeration, model correctness, and
//! run-to-run determinism.

use std::time::Duration;

use bcdsat_core::{gen, solve_formula, BranchMode, Formula, SolveOptions, Verdict};

/// Truth-table oracle, independent of the solver: walks every assignment.
fn enumerate_sat(f: &Formula) -> bool {
    assert!(f.num_vars <= 20, "oracle is exponential");
    if f.trivially_unsat {
        return false;
    }
    'assign: for bits in 0u64..(1u64 << f.num_vars) {
        let holds = |l: bcdsat_core::Lit| ((bits >> l.var().index()) & 1 == 1) == l.is_positive();
        for c in &f.clauses {
            if !c.lits().iter().any(|&l| holds(l)) {
                continue 'assign;
            }
        }
        for &u in &f.units {
            if !holds(u) {
                continue 'assign;
            }
        }
        return true;
    }
    false
}

fn model_satisfies(f: &Formula, model: &[bool]) -> bool {
    f.clauses.iter().all(|c| {
        c.lits()
            .iter()
            .any(|&l| model[l.var().index()] == l.is_positive())
    })
}

fn default_opts(mode: BranchMode) -> SolveOptions {
    SolveOptions {
        mode,
        decompose_budget: Duration::from_secs(10),
        ..SolveOptions::default()
    }
}

#[test]
fn verdicts_match_enumeration_on_random_corpus() {
    for seed in 0..150 {
        let vars = 4 + (seed as usize % 10);
        let clauses = 6 + (seed as usize * 7) % (4 * vars);
        let f = gen::random_formula(vars, clauses, 2, 4, seed);
        let expected = if enumerate_sat(&f) {
            Verdict::Sat
        } else {
            Verdict::Unsat
        };
        let out = solve_formula(&f, &default_opts(BranchMode::None), None).unwrap();
        assert_eq!(out.verdict, expected, "seed {seed}");
        if let Some(m) = &out.model {
            assert!(model_satisfies(&f, m), "seed {seed}: model violates input");
        }
    }
}

#[test]
fn verdicts_match_enumeration_exhaustively_over_three_vars() {
    for (i, f) in gen::exhaustive_three_var_formulas(3).iter().enumerate() {
        let expected = if enumerate_sat(f) {
            Verdict::Sat
        } else {
            Verdict::Unsat
        };
        let out = solve_formula(f, &default_opts(BranchMode::None), None).unwrap();
        assert_eq!(out.verdict, expected, "formula #{i}");
    }
}

#[test]
fn models_satisfy_original_formula_with_units_reapplied() {
    // Formulas with unit chains: the driver must compose root units back in.
    for seed in 200..240 {
        let mut f = gen::random_formula(8, 20, 2, 3, seed);
        f.add_clause(bcdsat_core::Clause::from_dimacs(&[1]));
        f.add_clause(bcdsat_core::Clause::from_dimacs(&[-1, 2]));
        let out = solve_formula(&f, &default_opts(BranchMode::Bcd3), None).unwrap();
        if let Some(m) = &out.model {
            assert!(model_satisfies(&f, m), "seed {seed}");
        } else {
            assert!(!enumerate_sat(&f), "seed {seed}: SAT instance not solved");
        }
    }
}

#[test]
fn identical_configurations_give_identical_runs() {
    for mode in [BranchMode::None, BranchMode::Bcd3] {
        let f = gen::random_formula(14, 55, 2, 4, 99);
        let mut opts = default_opts(mode);
        opts.engine.record_decisions = true;
        let a = solve_formula(&f, &opts, None).unwrap();
        let b = solve_formula(&f, &opts, None).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.stats.conflicts, b.stats.conflicts);
        assert_eq!(a.stats.decisions, b.stats.decisions);
        assert_eq!(a.decision_trace, b.decision_trace);
        assert_eq!(a.theta, b.theta);
        assert_eq!(a.quality, b.quality);
    }
}

#[test]
fn conflict_budget_yields_unknown() {
    let f = gen::pigeonhole(6);
    let mut opts = default_opts(BranchMode::None);
    opts.engine.max_conflicts = Some(3);
    let out = solve_formula(&f, &opts, None).unwrap();
    assert_eq!(out.verdict, Verdict::Unknown);
    assert!(out.model.is_none());
}

#[test]
fn engine_self_checks_pass_on_mixed_corpus() {
    for seed in 300..320 {
        let f = gen::random_formula(9, 32, 2, 4, seed);
        let mut opts = default_opts(BranchMode::Bcd2);
        opts.engine.check_invariants = true;
        opts.engine.check_learnt_rup = true;
        let out = solve_formula(&f, &opts, None).unwrap();
        assert_ne!(out.verdict, Verdict::Unknown);
    }
}

#[test]
fn minimization_keeps_verdicts_sound() {
    for seed in 400..430 {
        let f = gen::random_formula(10, 38, 2, 4, seed);
        let mut opts = default_opts(BranchMode::None);
        opts.engine.minimize_learnts = true;
        opts.engine.check_learnt_rup = true;
        let out = solve_formula(&f, &opts, None).unwrap();
        let expected = if enumerate_sat(&f) {
            Verdict::Sat
        } else {
            Verdict::Unsat
        };
        assert_eq!(out.verdict, expected, "seed {seed}");
    }
}

#[test]
fn seeded_phases_change_nothing_but_stay_deterministic() {
    let f = gen::random_formula(12, 45, 2, 4, 5);
    let expected = if enumerate_sat(&f) {
        Verdict::Sat
    } else {
        Verdict::Unsat
    };
    for seed in [0u64, 1, 99] {
        let mut opts = default_opts(BranchMode::None);
        opts.engine.seed = seed;
        opts.engine.record_decisions = true;
        let a = solve_formula(&f, &opts, None).unwrap();
        let b = solve_formula(&f, &opts, None).unwrap();
        assert_eq!(a.verdict, expected);
        assert_eq!(a.decision_trace, b.decision_trace);
    }
}
