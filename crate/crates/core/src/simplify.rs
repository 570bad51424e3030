//! Root-level simplification.
//!
//! Unit propagation to fixpoint plus removal of tautologies, satisfied
//! clauses, falsified literals, and duplicate clauses. This is deliberately
//! the whole preprocessing story: the result is trivially equisatisfiable
//! with the input, and the residual clause set is what gets decomposed.

use std::collections::HashSet;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::Lit;

/// Simplifies a formula at the root level.
///
/// The returned formula contains no unit clauses, no tautologies, no
/// duplicate clauses, and no clause mentioning a root-fixed variable.
/// Eliminated units are recorded in `units`; deriving the empty clause sets
/// `trivially_unsat` (the clause list is then empty).
pub fn simplify_root(f: &Formula) -> Formula {
    let num_vars = f.num_vars;
    let mut value: Vec<Option<bool>> = vec![None; num_vars];
    let mut units: Vec<Lit> = Vec::new();
    let mut unsat = false;

    let fix = |l: Lit, value: &mut Vec<Option<bool>>, units: &mut Vec<Lit>| -> bool {
        match value[l.var().index()] {
            Some(v) if v == l.is_positive() => true,
            Some(_) => false,
            None => {
                value[l.var().index()] = Some(l.is_positive());
                units.push(l);
                true
            }
        }
    };

    for &u in &f.units {
        if !fix(u, &mut value, &mut units) {
            unsat = true;
        }
    }

    let mut current: Vec<Vec<Lit>> = Vec::with_capacity(f.num_clauses());
    for c in &f.clauses {
        if c.is_tautology() {
            continue;
        }
        let mut lits = c.lits().to_vec();
        lits.sort_unstable();
        lits.dedup();
        current.push(lits);
    }

    while !unsat {
        let fixed_before = units.len();
        let mut next: Vec<Vec<Lit>> = Vec::with_capacity(current.len());
        'clause: for mut lits in current {
            for &l in &lits {
                if value[l.var().index()] == Some(l.is_positive()) {
                    continue 'clause; // satisfied
                }
            }
            lits.retain(|&l| value[l.var().index()].is_none());
            match lits.len() {
                0 => {
                    unsat = true;
                    break;
                }
                1 => {
                    if !fix(lits[0], &mut value, &mut units) {
                        unsat = true;
                        break;
                    }
                }
                _ => next.push(lits),
            }
        }
        current = if unsat { Vec::new() } else { next };
        if units.len() == fixed_before {
            break;
        }
    }

    let mut out = Formula::new(num_vars);
    out.units = units;
    out.trivially_unsat = unsat;
    if !unsat {
        let mut seen: HashSet<Vec<Lit>> = HashSet::with_capacity(current.len());
        for lits in current {
            if seen.insert(lits.clone()) {
                out.clauses.push(Clause::new(lits));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_chain_propagates_to_fixpoint() {
        let f = Formula::from_clauses(3, [vec![1], vec![-1, 2], vec![-2, 3]]);
        let s = simplify_root(&f);
        assert!(!s.trivially_unsat);
        assert!(s.clauses.is_empty());
        let units: Vec<i32> = s.units.iter().map(|l| l.to_dimacs()).collect();
        assert_eq!(units, vec![1, 2, 3]);
    }

    #[test]
    fn complementary_units_are_unsat() {
        let f = Formula::from_clauses(1, [vec![1], vec![-1]]);
        let s = simplify_root(&f);
        assert!(s.trivially_unsat);
    }

    #[test]
    fn duplicates_collapse() {
        let f = Formula::from_clauses(2, [vec![1, 2], vec![1, 2]]);
        let s = simplify_root(&f);
        assert_eq!(s.num_clauses(), 1);
        assert_eq!(s.clauses[0], Clause::from_dimacs(&[1, 2]).normalized());
    }

    #[test]
    fn tautologies_and_satisfied_clauses_vanish() {
        let f = Formula::from_clauses(3, [vec![1, -1], vec![2], vec![2, 3], vec![-2, 3]]);
        let s = simplify_root(&f);
        assert!(!s.trivially_unsat);
        // 2 is fixed, [2,3] satisfied, [-2,3] shrinks to unit 3.
        assert!(s.clauses.is_empty());
        let units: Vec<i32> = s.units.iter().map(|l| l.to_dimacs()).collect();
        assert_eq!(units, vec![2, 3]);
    }

    #[test]
    fn empty_clause_in_input_is_unsat() {
        let f = Formula::from_clauses(1, [vec![]]);
        assert!(simplify_root(&f).trivially_unsat);
    }

    #[test]
    fn residual_clauses_keep_no_fixed_vars() {
        let f = Formula::from_clauses(4, [vec![1], vec![-1, 2, 3], vec![3, 4], vec![-3, 4, 2]]);
        let s = simplify_root(&f);
        for c in &s.clauses {
            for &l in c.lits() {
                assert!(!s.units.iter().any(|u| u.var() == l.var()));
            }
            assert!(c.len() >= 2);
            assert!(!c.is_tautology());
        }
    }
}
