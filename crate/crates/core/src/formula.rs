//! CNF formulas.

use std::collections::HashSet;

use crate::clause::Clause;
use crate::lit::{Lit, Var};

/// A CNF formula over variables `1..=num_vars`.
///
/// `units` records literals fixed at the root by simplification; a model of
/// the residual clauses extended by `units` is a model of the original
/// formula. `trivially_unsat` is set when root simplification derives the
/// empty clause.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Formula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
    pub units: Vec<Lit>,
    pub trivially_unsat: bool,
}

impl Formula {
    pub fn new(num_vars: usize) -> Formula {
        Formula {
            num_vars,
            clauses: Vec::new(),
            units: Vec::new(),
            trivially_unsat: false,
        }
    }

    /// Builds a formula from DIMACS integer clauses, growing `num_vars` to
    /// fit. Test convenience.
    pub fn from_clauses<I, C>(num_vars: usize, clauses: I) -> Formula
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[i32]>,
    {
        let mut f = Formula::new(num_vars);
        for c in clauses {
            f.add_clause(Clause::from_dimacs(c.as_ref()));
        }
        f
    }

    /// Appends a clause, growing `num_vars` if the clause mentions a larger
    /// variable.
    pub fn add_clause(&mut self, clause: Clause) {
        if let Some(v) = clause.max_var() {
            self.num_vars = self.num_vars.max(v.index() + 1);
        }
        self.clauses.push(clause);
    }

    #[inline]
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Number of distinct variables occurring in the clauses (not counting
    /// root units or never-mentioned variables).
    pub fn occurring_var_count(&self) -> usize {
        let mut seen: HashSet<Var> = HashSet::new();
        for c in &self.clauses {
            for &l in c.lits() {
                seen.insert(l.var());
            }
        }
        seen.len()
    }
}
