//! Behavior of the decomposition-guided branching policy: gate equivalence,
//! the window bound, and the position-table oracle.

use std::time::Duration;

use bcdsat_core::policy::{attach_policy, build_pos, OrderedBlockedClauses};
use bcdsat_core::{
    gen, improve_decomposition, pure_decompose, simplify_root, BranchMode, Formula, ModeConfig,
    Solver, SolverConfig, Var,
};

/// Position table straight from the definition: minimum index of a binary
/// clause containing v if one exists, else minimum index of any clause
/// containing v, else 0.
fn pos_oracle(obc: &OrderedBlockedClauses, num_vars: usize) -> Vec<usize> {
    let mut pos = vec![0usize; num_vars];
    for vi in 0..num_vars {
        let v = Var::from_index(vi);
        let mut first_binary = 0usize;
        let mut first_any = 0usize;
        for i in 1..=obc.len() {
            let c = obc.clause(i);
            if c.lits().iter().any(|l| l.var() == v) {
                if first_any == 0 {
                    first_any = i;
                }
                if c.len() == 2 && first_binary == 0 {
                    first_binary = i;
                }
            }
        }
        pos[vi] = if first_binary != 0 {
            first_binary
        } else {
            first_any
        };
    }
    pos
}

fn decomposed(f: &Formula) -> (Formula, bcdsat_core::BlockedDecomposition) {
    let s = simplify_root(f);
    let d = improve_decomposition(&pure_decompose(&s), &s, Duration::from_secs(5));
    (s, d)
}

#[test]
fn pos_table_matches_definition_oracle() {
    for seed in 0..80 {
        let vars = 4 + (seed as usize % 12);
        let f = gen::random_formula(vars, 6 + (seed as usize * 5) % 50, 2, 4, seed);
        let (s, d) = decomposed(&f);
        let obc = OrderedBlockedClauses::from_decomposition(&d, &s);
        let table = build_pos(&obc, s.num_vars);
        assert_eq!(table.as_slice(), pos_oracle(&obc, s.num_vars), "seed {seed}");
    }
}

#[test]
fn zero_theta_is_bitwise_identical_to_plain_evsids() {
    for seed in 0..50 {
        let f = gen::random_formula(10 + (seed as usize % 6), 45, 2, 4, 1000 + seed);
        let s = simplify_root(&f);
        let cfg = SolverConfig {
            record_decisions: true,
            ..SolverConfig::default()
        };

        let mut baseline = Solver::new(&s, cfg.clone());
        let base = baseline.solve().unwrap();

        let d = pure_decompose(&s);
        let mut policy =
            attach_policy(&s, &d, ModeConfig::with_theta(BranchMode::Bcd3, 0)).unwrap();
        let mut gated = Solver::new(&s, cfg);
        let run = gated.solve_with(&mut policy).unwrap();

        assert_eq!(base.verdict, run.verdict, "seed {seed}");
        assert_eq!(base.stats.conflicts, run.stats.conflicts, "seed {seed}");
        assert_eq!(base.stats.decisions, run.stats.decisions, "seed {seed}");
        assert_eq!(base.decision_trace, run.decision_trace, "seed {seed}");
    }
}

#[test]
fn open_gate_decisions_stay_inside_the_window() {
    let mut window_picks = 0usize;
    for seed in 0..40 {
        let f = gen::random_ksat(12, 50, 3, 2000 + seed);
        let (s, d) = decomposed(&f);
        if s.num_clauses() == 0 {
            continue;
        }
        let mut policy = attach_policy(
            &s,
            &d,
            ModeConfig::with_theta(BranchMode::Bcd3, 500_000),
        )
        .unwrap();
        policy.enable_trace();
        let mut solver = Solver::new(&s, SolverConfig::default());
        let _ = solver.solve_with(&mut policy).unwrap();

        let obc = policy.ordered_clauses().clone();
        let pos = policy.pos_table().clone();
        for pick in policy.take_trace() {
            window_picks += 1;
            let anchor_pos = pos.get(pick.anchor);
            assert_eq!(anchor_pos, pick.pos, "seed {seed}: stale anchor position");
            assert!(anchor_pos > 0);
            assert!(
                (anchor_pos..anchor_pos + 6).contains(&pick.clause_index),
                "seed {seed}: clause index {} outside [{}, {}]",
                pick.clause_index,
                anchor_pos,
                anchor_pos + 5
            );
            assert!(pick.clause_index <= obc.len());
            let clause = obc.clause(pick.clause_index);
            assert!(
                clause.lits().iter().any(|l| l.var() == pick.lit.var()),
                "seed {seed}: decision variable not in its window clause"
            );
        }
    }
    assert!(window_picks > 0, "gate never opened; test is vacuous");
}

#[test]
fn ordered_clauses_concatenate_large_then_small() {
    for seed in 0..30 {
        let f = gen::random_formula(8, 30, 2, 4, 3000 + seed);
        let (s, d) = decomposed(&f);
        let obc = OrderedBlockedClauses::from_decomposition(&d, &s);
        assert_eq!(obc.len(), d.large.len() + d.small.len());
        assert_eq!(obc.large_len(), d.large.len());
        // Reversing each segment yields the recorded elimination orders.
        for (k, &ci) in d.elim_order_large.iter().rev().enumerate() {
            assert_eq!(obc.clause(k + 1), &s.clauses[ci]);
        }
        for (k, &ci) in d.elim_order_small.iter().rev().enumerate() {
            assert_eq!(obc.clause(d.large.len() + k + 1), &s.clauses[ci]);
        }
    }
}

/// Hand trace of the window algorithm: satisfied window clauses are skipped
/// and the highest-activity unassigned variable of the remainder is chosen,
/// even when a variable outside the window has the globally highest score.
#[test]
fn window_selection_hand_trace() {
    use bcdsat_core::Lit;

    // pure_decompose orders this as C1=[2,3], C2=[1,4], C3=[6,7], C4=[-4,-5],
    // so pos[1] = 2 (first binary clause containing variable 1).
    let f = Formula::from_clauses(7, [vec![2, 3], vec![1, 4], vec![6, 7], vec![-4, -5]]);
    let d = pure_decompose(&f);
    let mut policy =
        attach_policy(&f, &d, ModeConfig::with_theta(BranchMode::Bcd3, 500_000)).unwrap();
    policy.enable_trace();
    assert_eq!(policy.pos_table().get(Var::from_dimacs(1)), 2);

    let mut s = Solver::new(&f, SolverConfig::default());
    let v = |n: i32| Var::from_dimacs(n);
    s.bump_and_decay(&[v(5)]);
    s.bump_and_decay(&[v(5)]);
    s.bump_and_decay(&[v(4)]);
    // variable 2 has the globally highest activity but sits outside the window
    s.bump_and_decay(&[v(2)]);
    s.bump_and_decay(&[v(2)]);
    s.bump_and_decay(&[v(2)]);
    assert!(s.activity(v(2)) > s.activity(v(5)));
    assert!(s.activity(v(5)) > s.activity(v(4)));

    s.decide(Lit::from_dimacs(1)); // anchor, satisfies C2
    assert!(s.propagate().is_none());
    s.decide(Lit::from_dimacs(6)); // satisfies C3
    assert!(s.propagate().is_none());
    assert_eq!(s.decision_level(), 2);

    // Window C2..C7 -> C2 and C3 satisfied, C4=[-4,-5] supplies {4, 5};
    // variable 5 wins on activity; polarity comes from the saved phase.
    let pick = s.next_decision(&mut policy).expect("variables remain");
    assert_eq!(pick.var(), v(5));
    assert!(!pick.is_positive());
    let trace = policy.take_trace();
    assert_eq!(trace.len(), 1);
    assert_eq!(trace[0].anchor, v(1));
    assert_eq!(trace[0].pos, 2);
    assert_eq!(trace[0].clause_index, 4);
    assert_eq!(trace[0].level, 2);

    // Equal activities break toward the lower variable index.
    let mut policy =
        attach_policy(&f, &d, ModeConfig::with_theta(BranchMode::Bcd3, 500_000)).unwrap();
    let mut s = Solver::new(&f, SolverConfig::default());
    s.decide(Lit::from_dimacs(1));
    assert!(s.propagate().is_none());
    s.decide(Lit::from_dimacs(6));
    assert!(s.propagate().is_none());
    let pick = s.next_decision(&mut policy).expect("variables remain");
    assert_eq!(pick.var(), v(4));
}

#[test]
fn gate_closes_after_theta_conflicts() {
    let f = gen::random_ksat(12, 51, 3, 424_242);
    let s = simplify_root(&f);
    let d = pure_decompose(&s);
    let theta = 3u64;
    let mut policy =
        attach_policy(&s, &d, ModeConfig::with_theta(BranchMode::Bcd2, theta)).unwrap();
    policy.enable_trace();
    let mut solver = Solver::new(&s, SolverConfig::default());
    let result = solver.solve_with(&mut policy).unwrap();
    assert!(
        result.stats.conflicts > theta,
        "instance too easy to exercise the gate"
    );
    for pick in policy.take_trace() {
        assert!(pick.conflicts < theta);
    }
}

#[test]
fn window_picks_happen_only_at_levels_one_to_three() {
    let f = gen::random_ksat(14, 60, 3, 77);
    let (s, d) = decomposed(&f);
    let mut policy = attach_policy(
        &s,
        &d,
        ModeConfig::with_theta(BranchMode::Bcd1, 6_000_000),
    )
    .unwrap();
    policy.enable_trace();
    let mut solver = Solver::new(&s, SolverConfig::default());
    let _ = solver.solve_with(&mut policy).unwrap();
    let trace = policy.take_trace();
    assert!(!trace.is_empty());
    for pick in trace {
        assert!((1..=3).contains(&pick.level), "pick at level {}", pick.level);
    }
}
