//! Blocked-clause predicates and elimination.
//!
//! A literal `l` blocks a clause `c` w.r.t. a clause set if `c` is a
//! tautology w.r.t. `l`, or every resolvent of `c` on `l` with a clause
//! containing `!l` is a tautology. Repeatedly removing blocked clauses is
//! confluent: the residue does not depend on removal order.

use std::collections::VecDeque;

use crate::clause::Clause;
use crate::index::OccurrenceIndex;
use crate::lit::Lit;

/// The resolvent of `c1` and `c2` on `l`: `(c1 \ {l}) ∪ (c2 \ {!l})`,
/// duplicates removed.
///
/// Panics unless `l ∈ c1` and `!l ∈ c2`.
pub fn resolvent(c1: &Clause, c2: &Clause, l: Lit) -> Clause {
    assert!(
        c1.contains(l) && c2.contains(!l),
        "resolution literal must occur positively in c1 and negated in c2"
    );
    let lits: Vec<Lit> = c1
        .lits()
        .iter()
        .filter(|&&a| a != l)
        .chain(c2.lits().iter().filter(|&&b| b != !l))
        .copied()
        .collect();
    Clause::new(lits).normalized()
}

/// True iff `l` blocks `c` w.r.t. the active clause set.
///
/// `c` itself may be a member of `active`; since `c` contains `l`, it only
/// participates as a resolution partner when it also contains `!l`, in which
/// case the tautology branch already applies. Panics unless `l ∈ c`.
pub fn is_blocked(c: &Clause, l: Lit, active: &[Clause]) -> bool {
    assert!(c.contains(l), "blocking literal must occur in the clause");
    if c.contains(!l) {
        return true;
    }
    active
        .iter()
        .filter(|c2| c2.contains(!l))
        .all(|c2| resolvent(c, c2, l).is_tautology())
}

/// Outcome of [`bce_fixpoint`]: eliminated clauses with their blocking
/// literals, in removal order, and the surviving clause indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BceOutcome {
    pub eliminated: Vec<(usize, Lit)>,
    pub residue: Vec<usize>,
}

/// Runs blocked-clause elimination to fixpoint over all clauses.
pub fn bce_fixpoint(clauses: &[Clause]) -> BceOutcome {
    let members: Vec<usize> = (0..clauses.len()).collect();
    bce_fixpoint_over(clauses, &members)
}

/// Runs BCE to fixpoint over the given member clauses only.
///
/// Uses a touched-literal worklist: a (clause, literal) pair is re-examined
/// only after some `!l` occurrence disappears.
pub fn bce_fixpoint_over(clauses: &[Clause], members: &[usize]) -> BceOutcome {
    let mut occ = OccurrenceIndex::build_over(clauses, members);
    let mut checker = BlockedChecker::for_clauses(clauses);

    let mut queued = vec![false; checker.lit_capacity()];
    let mut worklist: VecDeque<Lit> = VecDeque::new();
    let mut seen_lits: Vec<Lit> = members
        .iter()
        .flat_map(|&ci| clauses[ci].lits())
        .copied()
        .collect();
    seen_lits.sort_unstable();
    seen_lits.dedup();
    for l in seen_lits {
        queued[l.index()] = true;
        worklist.push_back(l);
    }

    let mut eliminated: Vec<(usize, Lit)> = Vec::new();
    while let Some(l) = worklist.pop_front() {
        queued[l.index()] = false;
        let candidates: Vec<usize> = occ.occurrences(l).collect();
        for ci in candidates {
            if !occ.is_active(ci) {
                continue;
            }
            if checker.blocked(&clauses[ci], l, &occ, clauses) {
                occ.remove(ci);
                eliminated.push((ci, l));
                for &k in clauses[ci].lits() {
                    let touched = !k;
                    if !queued[touched.index()] {
                        queued[touched.index()] = true;
                        worklist.push_back(touched);
                    }
                }
            }
        }
    }

    let residue: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&ci| occ.is_active(ci))
        .collect();
    BceOutcome {
        eliminated,
        residue,
    }
}

/// Stamp-based blocked check against an occurrence index.
///
/// Avoids materializing resolvents: marks the literals of the candidate
/// clause once, then looks for a complementary pair with each `!l` partner.
pub(crate) struct BlockedChecker {
    stamp: Vec<u32>,
    tick: u32,
}

impl BlockedChecker {
    pub(crate) fn for_clauses(clauses: &[Clause]) -> BlockedChecker {
        let cap = clauses
            .iter()
            .flat_map(|c| c.lits())
            .map(|l| l.var().index())
            .max()
            .map_or(0, |m| 2 * (m + 1));
        BlockedChecker {
            stamp: vec![0; cap],
            tick: 0,
        }
    }

    pub(crate) fn lit_capacity(&self) -> usize {
        self.stamp.len()
    }

    /// True iff `l` blocks `c` w.r.t. the clauses active in `occ`.
    pub(crate) fn blocked(
        &mut self,
        c: &Clause,
        l: Lit,
        occ: &OccurrenceIndex,
        clauses: &[Clause],
    ) -> bool {
        if c.contains(!l) {
            return true;
        }
        if tautological_apart_from(c, l) {
            // Every resolvent on l inherits the complementary pair.
            return true;
        }
        self.tick += 1;
        for &a in c.lits() {
            self.stamp[a.index()] = self.tick;
        }
        'partners: for ci in occ.occurrences(!l) {
            let c2 = &clauses[ci];
            for &b in c2.lits() {
                if b == !l {
                    continue;
                }
                if self.stamp[(!b).index()] == self.tick {
                    continue 'partners; // cross pair: resolvent is a tautology
                }
            }
            if tautological_apart_from(c2, !l) {
                continue;
            }
            return false;
        }
        true
    }
}

/// True iff `c` contains a complementary pair not involving `skip`'s variable.
fn tautological_apart_from(c: &Clause, skip: Lit) -> bool {
    c.lits()
        .iter()
        .any(|&a| a.var() != skip.var() && c.contains(!a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clauses(spec: &[&[i32]]) -> Vec<Clause> {
        spec.iter().map(|c| Clause::from_dimacs(c)).collect()
    }

    #[test]
    fn resolvent_basic() {
        let c1 = Clause::from_dimacs(&[1, 2]);
        let c2 = Clause::from_dimacs(&[-1, 3]);
        let r = resolvent(&c1, &c2, Lit::from_dimacs(1));
        assert_eq!(r, Clause::from_dimacs(&[2, 3]).normalized());
        assert!(!r.is_tautology());
    }

    #[test]
    fn resolvent_tautology_flagged() {
        let c1 = Clause::from_dimacs(&[1, 2]);
        let c2 = Clause::from_dimacs(&[-1, -2]);
        let r = resolvent(&c1, &c2, Lit::from_dimacs(1));
        assert!(r.is_tautology());
    }

    #[test]
    fn resolvent_of_units_is_empty() {
        let c1 = Clause::from_dimacs(&[1]);
        let c2 = Clause::from_dimacs(&[-1]);
        assert!(resolvent(&c1, &c2, Lit::from_dimacs(1)).is_empty());
    }

    #[test]
    #[should_panic]
    fn resolvent_checks_preconditions() {
        let c1 = Clause::from_dimacs(&[1, 2]);
        let c2 = Clause::from_dimacs(&[1, 3]);
        let _ = resolvent(&c1, &c2, Lit::from_dimacs(1));
    }

    #[test]
    fn blocked_when_all_resolvents_tautological() {
        let f = clauses(&[&[1, 2], &[-1, -2]]);
        assert!(is_blocked(&f[0], Lit::from_dimacs(1), &f));
    }

    #[test]
    fn not_blocked_on_plain_resolvent() {
        let f = clauses(&[&[1, 2], &[-1, 3]]);
        assert!(!is_blocked(&f[0], Lit::from_dimacs(1), &f));
    }

    #[test]
    fn tautology_branch_blocks_unconditionally() {
        let f = clauses(&[&[1, -1, 2], &[-1, 3], &[-2, -3]]);
        assert!(is_blocked(&f[0], Lit::from_dimacs(1), &f));
    }

    #[test]
    #[should_panic]
    fn is_blocked_checks_membership() {
        let f = clauses(&[&[1, 2]]);
        let _ = is_blocked(&f[0], Lit::from_dimacs(3), &f);
    }

    #[test]
    fn fixpoint_eliminates_mutually_blocked_pair() {
        let f = clauses(&[&[1, 2], &[-1, -2]]);
        let out = bce_fixpoint(&f);
        assert_eq!(out.residue, Vec::<usize>::new());
        assert_eq!(out.eliminated.len(), 2);
    }

    #[test]
    fn fixpoint_on_empty_set() {
        let out = bce_fixpoint(&[]);
        assert!(out.eliminated.is_empty());
        assert!(out.residue.is_empty());
    }

    /// Rescan-all BCE oracle: repeatedly scans every remaining clause and
    /// literal until nothing is blocked.
    fn bce_residue_rescan(cls: &[Clause]) -> Vec<usize> {
        let mut alive: Vec<usize> = (0..cls.len()).collect();
        loop {
            let active: Vec<Clause> = alive.iter().map(|&i| cls[i].clone()).collect();
            let mut removed = None;
            'outer: for (k, &i) in alive.iter().enumerate() {
                for &l in cls[i].lits() {
                    if is_blocked(&cls[i], l, &active) {
                        removed = Some(k);
                        break 'outer;
                    }
                }
            }
            match removed {
                Some(k) => {
                    alive.remove(k);
                }
                None => return alive,
            }
        }
    }

    #[test]
    fn fixpoint_matches_rescan_oracle_on_example() {
        let f = clauses(&[&[1, 2], &[-1, 3], &[-3, -2]]);
        let out = bce_fixpoint(&f);
        assert_eq!(out.residue, bce_residue_rescan(&f));
    }

    #[test]
    fn fixpoint_matches_rescan_oracle_on_random_formulas() {
        for seed in 0..60 {
            let f = crate::gen::random_formula(6, 14, 1, 3, seed);
            let out = bce_fixpoint(&f.clauses);
            assert_eq!(
                out.residue,
                bce_residue_rescan(&f.clauses),
                "seed {seed}: residue disagrees with rescan oracle"
            );
            // Eliminated + residue partition the input.
            let mut all: Vec<usize> =
                out.eliminated.iter().map(|&(i, _)| i).chain(out.residue).collect();
            all.sort_unstable();
            assert_eq!(all, (0..f.num_clauses()).collect::<Vec<_>>());
        }
    }
}
