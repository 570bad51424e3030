//! Clauses.

use std::fmt;

use crate::lit::{Lit, Var};

/// A disjunction of literals.
///
/// Learnt clauses additionally carry an LBD (the number of distinct decision
/// levels among their literals at learn time).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    lbd: u32,
}

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Clause {
        Clause {
            lits,
            learnt: false,
            lbd: 0,
        }
    }

    /// Builds a clause from DIMACS integers. Test and parser convenience.
    pub fn from_dimacs(lits: &[i32]) -> Clause {
        Clause::new(lits.iter().map(|&n| Lit::from_dimacs(n)).collect())
    }

    /// Sorts literals and drops duplicates. Complementary pairs are kept;
    /// see [`Clause::is_tautology`].
    pub fn normalized(mut self) -> Clause {
        self.lits.sort_unstable();
        self.lits.dedup();
        self
    }

    #[inline]
    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    #[inline]
    pub fn contains(&self, l: Lit) -> bool {
        self.lits.contains(&l)
    }

    /// True iff the clause contains some literal together with its negation.
    pub fn is_tautology(&self) -> bool {
        self.lits.iter().any(|&l| self.lits.contains(&!l))
    }

    #[inline]
    pub fn is_learnt(&self) -> bool {
        self.learnt
    }

    pub fn set_learnt(&mut self, learnt: bool) {
        self.learnt = learnt;
    }

    #[inline]
    pub fn lbd(&self) -> u32 {
        self.lbd
    }

    pub fn set_lbd(&mut self, lbd: u32) {
        self.lbd = lbd;
    }

    /// The variable with the largest index, if any.
    pub fn max_var(&self) -> Option<Var> {
        self.lits.iter().map(|l| l.var()).max()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Lit> {
        self.lits.iter()
    }
}

impl FromIterator<Lit> for Clause {
    fn from_iter<I: IntoIterator<Item = Lit>>(iter: I) -> Clause {
        Clause::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        write!(f, "{}0", if self.lits.is_empty() { "" } else { " " })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_drops_duplicates() {
        let c = Clause::from_dimacs(&[1, -2, 1, -2, 3]).normalized();
        assert_eq!(c.lits().len(), 3);
        assert!(c.contains(Lit::from_dimacs(1)));
        assert!(c.contains(Lit::from_dimacs(-2)));
        assert!(c.contains(Lit::from_dimacs(3)));
    }

    #[test]
    fn tautology_detection() {
        assert!(Clause::from_dimacs(&[1, -1]).is_tautology());
        assert!(Clause::from_dimacs(&[2, 1, -2]).is_tautology());
        assert!(!Clause::from_dimacs(&[1, 2]).is_tautology());
        assert!(!Clause::from_dimacs(&[]).is_tautology());
    }

    #[test]
    fn max_var() {
        assert_eq!(
            Clause::from_dimacs(&[1, -3, 2]).max_var(),
            Some(Var::from_dimacs(3))
        );
        assert_eq!(Clause::new(vec![]).max_var(), None);
    }
}
