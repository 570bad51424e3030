//! Per-literal occurrence lists.

use crate::clause::Clause;
use crate::lit::Lit;

/// Occurrence lists over a clause slice, with lazy removal.
///
/// Eliminated clauses are deactivated rather than spliced out of the lists;
/// iteration filters them. A clause index appears in the list of literal `l`
/// iff the clause is active and contains `l`.
pub struct OccurrenceIndex {
    lists: Vec<Vec<usize>>,
    active: Vec<bool>,
    active_count: usize,
}

impl OccurrenceIndex {
    /// Indexes every clause in the slice.
    pub fn build(clauses: &[Clause]) -> OccurrenceIndex {
        let members: Vec<usize> = (0..clauses.len()).collect();
        OccurrenceIndex::build_over(clauses, &members)
    }

    /// Indexes only the given member clauses; the rest start inactive.
    pub fn build_over(clauses: &[Clause], members: &[usize]) -> OccurrenceIndex {
        let max_lit = clauses
            .iter()
            .flat_map(|c| c.lits())
            .map(|l| l.index())
            .max()
            .map_or(0, |m| m + 1);
        let mut idx = OccurrenceIndex {
            lists: vec![Vec::new(); max_lit],
            active: vec![false; clauses.len()],
            active_count: 0,
        };
        for &ci in members {
            idx.insert(ci, &clauses[ci]);
        }
        idx
    }

    /// Activates a clause and records its literals. Stale entries from an
    /// earlier activation are reused rather than duplicated.
    pub fn insert(&mut self, ci: usize, clause: &Clause) {
        debug_assert!(!self.active[ci]);
        for &l in clause.lits() {
            if l.index() >= self.lists.len() {
                self.lists.resize(l.index() + 1, Vec::new());
            }
            if !self.lists[l.index()].contains(&ci) {
                self.lists[l.index()].push(ci);
            }
        }
        self.active[ci] = true;
        self.active_count += 1;
    }

    /// Deactivates a clause; its stale list entries are filtered on iteration.
    pub fn remove(&mut self, ci: usize) {
        debug_assert!(self.active[ci]);
        self.active[ci] = false;
        self.active_count -= 1;
    }

    #[inline]
    pub fn is_active(&self, ci: usize) -> bool {
        self.active[ci]
    }

    #[inline]
    pub fn active_count(&self) -> usize {
        self.active_count
    }

    /// Active clauses containing `l`, in insertion order.
    pub fn occurrences(&self, l: Lit) -> impl Iterator<Item = usize> + '_ {
        let list: &[usize] = self
            .lists
            .get(l.index())
            .map_or(&[][..], |v| v.as_slice());
        list.iter().copied().filter(move |&ci| self.active[ci])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_occurrences_of_active_clauses() {
        let clauses = vec![
            Clause::from_dimacs(&[1, 2]),
            Clause::from_dimacs(&[-1, 2]),
            Clause::from_dimacs(&[-2, 3]),
        ];
        let mut idx = OccurrenceIndex::build(&clauses);
        let two = Lit::from_dimacs(2);
        assert_eq!(idx.occurrences(two).collect::<Vec<_>>(), vec![0, 1]);
        idx.remove(0);
        assert_eq!(idx.occurrences(two).collect::<Vec<_>>(), vec![1]);
        assert_eq!(idx.active_count(), 2);
        idx.insert(0, &clauses[0]);
        assert_eq!(idx.occurrences(two).collect::<Vec<_>>(), vec![0, 1]);
    }
}
