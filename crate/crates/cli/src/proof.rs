//! Forward RUP checking of textual DRAT proofs.
//!
//! Each learn line must be a reverse unit propagation consequence of the
//! accumulated clause database: asserting the negation of the clause and
//! propagating to fixpoint must yield a conflict. Delete lines remove
//! clauses. A proof is accepted exactly when an empty clause line verifies.
//!
//! The propagation here is an independent two-watched-literal implementation
//! with per-check undo; it shares nothing with the solver engine.

use std::collections::HashMap;

use bcdsat_core::{Formula, LBool, Lit};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub delete: bool,
    pub lits: Vec<Lit>,
    /// 1-based line number in the proof text.
    pub line: usize,
}

#[derive(Debug, Error)]
pub enum ProofParseError {
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: missing terminating 0")]
    Unterminated { line: usize },
}

/// Parses a textual DRAT proof. Comment lines (`c ...`) and blank lines are
/// skipped.
pub fn parse_drat(text: &str) -> Result<Vec<ProofLine>, ProofParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let (delete, body) = match trimmed.strip_prefix('d') {
            Some(rest) => (true, rest),
            None => (false, trimmed),
        };
        let mut lits = Vec::new();
        let mut terminated = false;
        for token in body.split_whitespace() {
            let n: i32 = token.parse().map_err(|_| ProofParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            if n == 0 {
                terminated = true;
                break;
            }
            lits.push(Lit::from_dimacs(n));
        }
        if !terminated {
            return Err(ProofParseError::Unterminated { line });
        }
        out.push(ProofLine { delete, lits, line });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofCheck {
    pub accepted: bool,
    /// Line number of the first learn line that is not RUP.
    pub failed_line: Option<usize>,
    /// Delete lines whose clause was not in the database (ignored).
    pub unmatched_deletes: usize,
}

/// Forward-checks a DRAT proof against the original formula.
pub fn check_proof(f: &Formula, proof: &[ProofLine]) -> ProofCheck {
    let mut max_var = f.num_vars;
    for line in proof {
        for &l in &line.lits {
            max_var = max_var.max(l.var().index() + 1);
        }
    }
    let mut db = ClauseDb::new(max_var);
    for c in &f.clauses {
        db.add(c.lits().to_vec());
    }
    for &u in &f.units {
        db.add(vec![u]);
    }

    let mut unmatched_deletes = 0usize;
    for line in proof {
        if line.delete {
            if !db.delete(&line.lits) {
                unmatched_deletes += 1;
            }
            continue;
        }
        if !db.is_rup(&line.lits) {
            return ProofCheck {
                accepted: false,
                failed_line: Some(line.line),
                unmatched_deletes,
            };
        }
        if line.lits.is_empty() {
            return ProofCheck {
                accepted: true,
                failed_line: None,
                unmatched_deletes,
            };
        }
        db.add(line.lits.clone());
    }
    ProofCheck {
        accepted: false,
        failed_line: None,
        unmatched_deletes,
    }
}

struct ClauseDb {
    clauses: Vec<Option<Vec<Lit>>>,
    watches: Vec<Vec<usize>>,
    units: Vec<Lit>,
    has_empty: bool,
    by_key: HashMap<Vec<Lit>, Vec<usize>>,
    assign: Vec<LBool>,
}

fn normalize(lits: &[Lit]) -> Vec<Lit> {
    let mut key = lits.to_vec();
    key.sort_unstable();
    key.dedup();
    key
}

impl ClauseDb {
    fn new(max_var: usize) -> ClauseDb {
        ClauseDb {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * max_var],
            units: Vec::new(),
            has_empty: false,
            by_key: HashMap::new(),
            assign: vec![LBool::Undef; max_var],
        }
    }

    fn add(&mut self, lits: Vec<Lit>) {
        let lits = normalize(&lits);
        match lits.len() {
            0 => self.has_empty = true,
            1 => self.units.push(lits[0]),
            _ => {
                let id = self.clauses.len();
                self.watches[lits[0].index()].push(id);
                self.watches[lits[1].index()].push(id);
                self.by_key.entry(lits.clone()).or_default().push(id);
                self.clauses.push(Some(lits));
            }
        }
    }

    /// Removes one clause matching the literal multiset; false when absent.
    fn delete(&mut self, lits: &[Lit]) -> bool {
        let key = normalize(lits);
        match key.len() {
            0 => {
                let had = self.has_empty;
                self.has_empty = false;
                had
            }
            1 => match self.units.iter().position(|&u| u == key[0]) {
                Some(i) => {
                    self.units.swap_remove(i);
                    true
                }
                None => false,
            },
            _ => {
                let id = match self.by_key.get_mut(&key).and_then(|v| v.pop()) {
                    Some(id) => id,
                    None => return false,
                };
                let current = self.clauses[id].take().expect("indexed clause is live");
                self.watches[current[0].index()].retain(|&w| w != id);
                self.watches[current[1].index()].retain(|&w| w != id);
                true
            }
        }
    }

    fn value(&self, l: Lit) -> LBool {
        value_in(&self.assign, l)
    }

    fn enqueue(&mut self, l: Lit, trail: &mut Vec<Lit>) -> bool {
        // false on conflict
        match self.value(l) {
            LBool::True => true,
            LBool::False => false,
            LBool::Undef => {
                self.assign[l.var().index()] = if l.is_positive() {
                    LBool::True
                } else {
                    LBool::False
                };
                trail.push(l);
                true
            }
        }
    }

    /// Unit propagation on the negation of `lits` must reach a conflict.
    fn is_rup(&mut self, lits: &[Lit]) -> bool {
        if self.has_empty {
            return true;
        }
        let mut trail: Vec<Lit> = Vec::new();
        let mut conflict = false;
        for i in 0..self.units.len() {
            if !self.enqueue(self.units[i], &mut trail) {
                conflict = true;
                break;
            }
        }
        if !conflict {
            for &l in lits {
                if !self.enqueue(!l, &mut trail) {
                    conflict = true;
                    break;
                }
            }
        }
        if !conflict {
            conflict = self.propagate(&mut trail);
        }
        for l in trail {
            self.assign[l.var().index()] = LBool::Undef;
        }
        conflict
    }

    fn propagate(&mut self, trail: &mut Vec<Lit>) -> bool {
        let mut qhead = 0usize;
        while qhead < trail.len() {
            let p = trail[qhead];
            qhead += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.index()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = false;
            'watchers: while i < ws.len() {
                let id = ws[i];
                i += 1;
                let action = {
                    let assign = &self.assign;
                    let c = match &mut self.clauses[id] {
                        Some(c) => c,
                        None => continue 'watchers,
                    };
                    if c[0] == false_lit {
                        c.swap(0, 1);
                    }
                    let first = c[0];
                    if value_in(assign, first) == LBool::True {
                        ws[j] = id;
                        j += 1;
                        continue 'watchers;
                    }
                    let mut new_watch = None;
                    for k in 2..c.len() {
                        if value_in(assign, c[k]) != LBool::False {
                            c.swap(1, k);
                            new_watch = Some(c[1]);
                            break;
                        }
                    }
                    match new_watch {
                        Some(nw) => Ok(nw),
                        None => Err(first),
                    }
                };
                match action {
                    Ok(nw) => self.watches[nw.index()].push(id),
                    Err(first) => {
                        ws[j] = id;
                        j += 1;
                        match self.value(first) {
                            LBool::False => {
                                conflict = true;
                                while i < ws.len() {
                                    ws[j] = ws[i];
                                    j += 1;
                                    i += 1;
                                }
                            }
                            LBool::Undef => {
                                let ok = self.enqueue(first, trail);
                                debug_assert!(ok);
                            }
                            LBool::True => {}
                        }
                    }
                }
            }
            ws.truncate(j);
            self.watches[false_lit.index()] = ws;
            if conflict {
                return true;
            }
        }
        false
    }
}

#[inline]
fn value_in(assign: &[LBool], l: Lit) -> LBool {
    match assign[l.var().index()] {
        LBool::Undef => LBool::Undef,
        LBool::True => {
            if l.is_positive() {
                LBool::True
            } else {
                LBool::False
            }
        }
        LBool::False => {
            if l.is_positive() {
                LBool::False
            } else {
                LBool::True
            }
        }
    }
}
