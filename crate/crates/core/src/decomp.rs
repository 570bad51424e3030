//! Decomposition of a formula into two blocked sets.
//!
//! Any CNF formula splits into two sets that BCE can each eliminate
//! completely. The construction here fixes the variable order `1..num_vars`
//! and routes every clause by the polarity of its maximum variable: when the
//! clauses of each side are eliminated in decreasing maximum-variable order,
//! each clause is vacuously blocked on its maximum-variable literal (no
//! remaining clause of the same side contains the complement). A greedy
//! budgeted pass then moves clauses from the small set into the large one
//! wherever the enlarged set stays fully eliminable.

use std::time::{Duration, Instant};

use crate::bce::BlockedChecker;
use crate::formula::Formula;
use crate::index::OccurrenceIndex;

/// A partition of a formula's clause indices into a large and a small
/// blocked set, with the BCE elimination order of each set recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedDecomposition {
    pub large: Vec<usize>,
    pub small: Vec<usize>,
    pub elim_order_large: Vec<usize>,
    pub elim_order_small: Vec<usize>,
}

impl BlockedDecomposition {
    /// Fraction of clauses in the large set, `|L| / (|L| + |S|)`.
    ///
    /// 1.0 for the empty formula.
    pub fn quality(&self) -> f64 {
        let total = self.large.len() + self.small.len();
        if total == 0 {
            1.0
        } else {
            self.large.len() as f64 / total as f64
        }
    }
}

/// Splits a simplified formula into two blocked sets by the polarity of each
/// clause's maximum variable.
///
/// Set P collects clauses whose maximum variable occurs positively, set N the
/// rest; the larger of the two becomes the large set (ties go to P).
/// Elimination order within each set is decreasing maximum variable, original
/// index ascending on ties. The input must be simplified: tautologies would
/// break the vacuous-blocking argument.
pub fn pure_decompose(f: &Formula) -> BlockedDecomposition {
    debug_assert!(
        f.clauses.iter().all(|c| !c.is_tautology() && !c.is_empty()),
        "pure_decompose requires a simplified formula"
    );
    let mut pos_set: Vec<usize> = Vec::new();
    let mut neg_set: Vec<usize> = Vec::new();
    let mut max_vars: Vec<usize> = Vec::with_capacity(f.num_clauses());
    for (ci, c) in f.clauses.iter().enumerate() {
        let mv = c.max_var().expect("no empty clauses in simplified input");
        max_vars.push(mv.index());
        let positive = c
            .lits()
            .iter()
            .any(|&l| l.var() == mv && l.is_positive());
        if positive {
            pos_set.push(ci);
        } else {
            neg_set.push(ci);
        }
    }

    let (large, small) = if pos_set.len() >= neg_set.len() {
        (pos_set, neg_set)
    } else {
        (neg_set, pos_set)
    };

    let elim_order = |set: &[usize]| -> Vec<usize> {
        let mut order = set.to_vec();
        order.sort_by(|&a, &b| max_vars[b].cmp(&max_vars[a]).then(a.cmp(&b)));
        order
    };

    BlockedDecomposition {
        elim_order_large: elim_order(&large),
        elim_order_small: elim_order(&small),
        large,
        small,
    }
}

/// Greedily moves clauses from the small set into the large one.
///
/// A clause moves when it is blocked w.r.t. the enlarged large set, so the
/// new set is eliminated by removing the moved clause first and then
/// replaying the existing order. Growing the set never makes a rejected
/// clause blocked, so a single pass over the small set reaches the greedy
/// fixpoint. Stops early when the budget expires; quality never decreases.
pub fn improve_decomposition(
    d: &BlockedDecomposition,
    f: &Formula,
    budget: Duration,
) -> BlockedDecomposition {
    if d.small.is_empty() {
        return d.clone();
    }
    let start = Instant::now();
    let mut occ = OccurrenceIndex::build_over(&f.clauses, &d.large);
    let mut checker = BlockedChecker::for_clauses(&f.clauses);

    let mut moves: Vec<usize> = Vec::new();
    let mut moved = vec![false; d.small.len()];
    for (si, &ci) in d.small.iter().enumerate() {
        if start.elapsed() >= budget {
            break;
        }
        let c = &f.clauses[ci];
        if c.lits()
            .iter()
            .any(|&l| checker.blocked(c, l, &occ, &f.clauses))
        {
            occ.insert(ci, c);
            moves.push(ci);
            moved[si] = true;
        }
    }
    if moves.is_empty() {
        return d.clone();
    }

    let mut large = d.large.clone();
    large.extend(&moves);
    large.sort_unstable();
    let mut moved_clause = vec![false; f.num_clauses()];
    for &ci in &moves {
        moved_clause[ci] = true;
    }
    let small: Vec<usize> = d
        .small
        .iter()
        .zip(&moved)
        .filter(|&(_, &m)| !m)
        .map(|(&ci, _)| ci)
        .collect();

    // Later moves were validated against earlier ones, so they eliminate first.
    let mut elim_order_large: Vec<usize> = moves.into_iter().rev().collect();
    elim_order_large.extend(&d.elim_order_large);
    let elim_order_small: Vec<usize> = d
        .elim_order_small
        .iter()
        .copied()
        .filter(|&ci| !moved_clause[ci])
        .collect();

    BlockedDecomposition {
        large,
        small,
        elim_order_large,
        elim_order_small,
    }
}

/// Checks a decomposition: the two sets must partition the formula's clause
/// indices, and replaying each recorded elimination order must find every
/// clause blocked w.r.t. the not-yet-eliminated remainder of its own set.
pub fn verify_decomposition(d: &BlockedDecomposition, f: &Formula) -> bool {
    let n = f.num_clauses();
    let mut seen = vec![false; n];
    for &ci in d.large.iter().chain(&d.small) {
        if ci >= n || seen[ci] {
            return false;
        }
        seen[ci] = true;
    }
    if seen.iter().any(|&s| !s) {
        return false;
    }

    let replay = |set: &[usize], order: &[usize]| -> bool {
        if set.len() != order.len() {
            return false;
        }
        let mut members = vec![false; n];
        for &ci in set {
            members[ci] = true;
        }
        if order.iter().any(|&ci| ci >= n || !members[ci]) {
            return false;
        }
        let mut in_order = vec![false; n];
        for &ci in order {
            if in_order[ci] {
                return false;
            }
            in_order[ci] = true;
        }
        let mut occ = OccurrenceIndex::build_over(&f.clauses, set);
        let mut checker = BlockedChecker::for_clauses(&f.clauses);
        for &ci in order {
            let c = &f.clauses[ci];
            let blocked = c
                .lits()
                .iter()
                .any(|&l| checker.blocked(c, l, &occ, &f.clauses));
            if !blocked {
                return false;
            }
            occ.remove(ci);
        }
        true
    };

    replay(&d.large, &d.elim_order_large) && replay(&d.small, &d.elim_order_small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_clause_tie_goes_to_positive_set() {
        let f = Formula::from_clauses(2, [[1, 2], [-1, 2], [1, -2], [-1, -2]]);
        let d = pure_decompose(&f);
        assert_eq!(d.large, vec![0, 1]);
        assert_eq!(d.small, vec![2, 3]);
        assert_eq!(d.quality(), 0.5);
        assert!(verify_decomposition(&d, &f));
    }

    #[test]
    fn all_positive_max_vars_give_quality_one() {
        let f = Formula::from_clauses(3, [[1, 2], [2, 3]]);
        let d = pure_decompose(&f);
        assert_eq!(d.large, vec![0, 1]);
        assert!(d.small.is_empty());
        assert_eq!(d.quality(), 1.0);
        assert!(verify_decomposition(&d, &f));
    }

    #[test]
    fn negative_only_set_is_relabeled_large() {
        let f = Formula::from_clauses(2, [[-1, -2]]);
        let d = pure_decompose(&f);
        assert_eq!(d.large, vec![0]);
        assert!(d.small.is_empty());
        assert_eq!(d.quality(), 1.0);
        assert!(verify_decomposition(&d, &f));
    }

    #[test]
    fn empty_formula_decomposes_trivially() {
        let f = Formula::new(0);
        let d = pure_decompose(&f);
        assert!(d.large.is_empty() && d.small.is_empty());
        assert_eq!(d.quality(), 1.0);
        assert!(verify_decomposition(&d, &f));
    }

    #[test]
    fn improve_keeps_empty_small_unchanged() {
        let f = Formula::from_clauses(3, [[1, 2], [2, 3]]);
        let d = pure_decompose(&f);
        let improved = improve_decomposition(&d, &f, Duration::from_secs(1));
        assert_eq!(improved, d);
    }

    #[test]
    fn improve_moves_blocked_clause() {
        // [−1,−2] resolves with [1,2] into a tautology on either literal, so
        // it can join the large set.
        let f = Formula::from_clauses(2, [[1, 2], [-1, -2]]);
        let d = pure_decompose(&f);
        assert_eq!(d.small.len(), 1);
        let improved = improve_decomposition(&d, &f, Duration::from_secs(1));
        assert!(improved.small.is_empty());
        assert_eq!(improved.quality(), 1.0);
        assert!(verify_decomposition(&improved, &f));
    }

    #[test]
    fn improve_respects_zero_budget() {
        let f = Formula::from_clauses(2, [[1, 2], [-1, -2]]);
        let d = pure_decompose(&f);
        let improved = improve_decomposition(&d, &f, Duration::ZERO);
        assert_eq!(improved, d);
    }

    #[test]
    fn swapped_singletons_still_verify() {
        let f = Formula::from_clauses(2, [[1, 2], [-1, -2]]);
        let d = BlockedDecomposition {
            large: vec![1],
            small: vec![0],
            elim_order_large: vec![1],
            elim_order_small: vec![0],
        };
        assert!(verify_decomposition(&d, &f));
    }

    #[test]
    fn verify_rejects_foreign_clause_in_order() {
        let f = Formula::from_clauses(2, [[1, 2], [-1, -2]]);
        let d = BlockedDecomposition {
            large: vec![0],
            small: vec![1],
            elim_order_large: vec![1], // not a member of large
            elim_order_small: vec![1],
        };
        assert!(!verify_decomposition(&d, &f));
    }

    #[test]
    fn verify_rejects_non_partition() {
        let f = Formula::from_clauses(2, [[1, 2], [-1, -2]]);
        let d = BlockedDecomposition {
            large: vec![0, 1],
            small: vec![1],
            elim_order_large: vec![1, 0],
            elim_order_small: vec![1],
        };
        assert!(!verify_decomposition(&d, &f));
    }

    #[test]
    fn random_formulas_decompose_validly() {
        for seed in 0..50 {
            let f = crate::simplify::simplify_root(&crate::gen::random_formula(
                8, 24, 2, 4, seed,
            ));
            let d = pure_decompose(&f);
            assert!(verify_decomposition(&d, &f), "seed {seed}: pure invalid");
            assert!(d.quality() >= 0.5 && d.quality() <= 1.0);
            let improved = improve_decomposition(&d, &f, Duration::from_secs(5));
            assert!(
                verify_decomposition(&improved, &f),
                "seed {seed}: improved invalid"
            );
            assert!(improved.quality() >= d.quality(), "seed {seed}: regressed");
        }
    }
}
