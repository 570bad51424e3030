//! CDCL search engine.
//!
//! Two-watched-literal propagation, first-UIP conflict analysis, EVSIDS
//! variable activities with phase saving, Luby restarts, LBD/activity-driven
//! learnt-database reduction, and optional DRAT proof logging. Decision
//! literal selection is pluggable through [`DecisionPolicy`]; the default is
//! plain EVSIDS.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drat::DratWriter;
use crate::formula::Formula;
use crate::heap::VarHeap;
use crate::lit::{Lit, Var};

/// Identifier of a clause stored by the solver.
pub type ClauseId = u32;

const REASON_NONE: ClauseId = u32::MAX;
const VAR_ACTIVITY_LIMIT: f64 = 1e100;
const VAR_ACTIVITY_RESCALE: f64 = 1e-100;
const CLAUSE_ACTIVITY_LIMIT: f64 = 1e20;
const CLAUSE_ACTIVITY_RESCALE: f64 = 1e-20;

/// Three-valued assignment.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LBool {
    True,
    False,
    Undef,
}

#[inline]
fn lit_value(assigns: &[LBool], l: Lit) -> LBool {
    match assigns[l.var().index()] {
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

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// EVSIDS decay: the bump increment grows by `1 / var_decay` per conflict.
    pub var_decay: f64,
    /// Learnt clause activity decay.
    pub clause_decay: f64,
    /// Luby restart unit, in conflicts.
    pub restart_unit: u64,
    /// Conflicts before the first learnt-DB reduction.
    pub reduce_base: u64,
    /// Growth of the reduction interval per reduction.
    pub reduce_inc: u64,
    /// Self-subsumption minimization of learnt clauses.
    pub minimize_learnts: bool,
    /// Check the watcher invariant after every propagation fixpoint.
    pub check_invariants: bool,
    /// Check every learnt clause by unit propagation against the database.
    pub check_learnt_rup: bool,
    /// Record the decision literal sequence in the result.
    pub record_decisions: bool,
    /// Conflict budget; exceeded runs return `Unknown`.
    pub max_conflicts: Option<u64>,
    /// Wall-clock budget, checked every 1024 conflicts.
    pub max_time: Option<Duration>,
    /// Nonzero seeds randomize initial phases; zero keeps them all false.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            var_decay: 0.95,
            clause_decay: 0.999,
            restart_unit: 100,
            reduce_base: 2000,
            reduce_inc: 300,
            minimize_learnts: false,
            check_invariants: false,
            check_learnt_rup: false,
            record_decisions: false,
            max_conflicts: None,
            max_time: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub wall: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub verdict: Verdict,
    /// Per-variable assignment when satisfiable; unassigned variables default
    /// to false.
    pub model: Option<Vec<bool>>,
    pub stats: SolveStats,
    pub decision_trace: Option<Vec<Lit>>,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("proof stream write failed: {0}")]
    ProofIo(#[from] std::io::Error),
}

/// Outcome of first-UIP conflict analysis.
///
/// `lits` is empty exactly when the conflict occurred at decision level 0,
/// i.e. the empty clause was derived. Otherwise `lits[0]` is the asserting
/// literal and `backtrack_level` the second-highest decision level present.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub lits: Vec<Lit>,
    pub backtrack_level: u32,
    pub lbd: u32,
}

impl Analysis {
    pub fn is_empty_clause(&self) -> bool {
        self.lits.is_empty()
    }
}

/// Chooses decision literals for the search loop.
pub trait DecisionPolicy {
    fn pick(&mut self, ctx: &mut DecisionCtx<'_>) -> Option<Lit>;
}

/// Plain EVSIDS selection at every level.
pub struct EvsidsPolicy;

impl DecisionPolicy for EvsidsPolicy {
    fn pick(&mut self, ctx: &mut DecisionCtx<'_>) -> Option<Lit> {
        ctx.pick_global()
    }
}

/// Read access to the search state for decision policies, plus the global
/// EVSIDS fallback.
pub struct DecisionCtx<'a> {
    assigns: &'a [LBool],
    activity: &'a [f64],
    phase: &'a [bool],
    heap: &'a mut VarHeap,
    trail: &'a [Lit],
    trail_lim: &'a [usize],
    conflicts: u64,
}

impl<'a> DecisionCtx<'a> {
    #[inline]
    pub fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    #[inline]
    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    #[inline]
    pub fn value(&self, l: Lit) -> LBool {
        lit_value(self.assigns, l)
    }

    #[inline]
    pub fn activity(&self, v: Var) -> f64 {
        self.activity[v.index()]
    }

    /// The saved-phase literal for `v`.
    #[inline]
    pub fn phase_lit(&self, v: Var) -> Lit {
        Lit::new(v, self.phase[v.index()])
    }

    /// The variable decided at level 1 of the current path, if any.
    pub fn first_decision_var(&self) -> Option<Var> {
        self.trail_lim.first().map(|&i| self.trail[i].var())
    }

    /// The unassigned variable with the highest activity (ties toward the
    /// lower index), with its saved phase. None when everything is assigned.
    pub fn pick_global(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop_max(self.activity) {
            if self.assigns[v.index()] == LBool::Undef {
                return Some(self.phase_lit(v));
            }
        }
        None
    }
}

struct StoredClause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: ClauseId,
    blocker: Lit,
}

#[derive(Clone, Copy)]
struct VarInfo {
    reason: ClauseId,
    level: u32,
}

pub struct Solver {
    num_vars: usize,
    clauses: Vec<StoredClause>,
    learnts: Vec<ClauseId>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<LBool>,
    varinfo: Vec<VarInfo>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    decidable: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    conflicts: u64,
    decisions: u64,
    propagations: u64,
    restarts: u64,
    restart_base: u64,
    next_reduce: u64,
    reductions: u64,
    simp_trail_len: usize,
    proof: Option<DratWriter<Box<dyn Write>>>,
    proof_root_logged: usize,
    decision_trace: Vec<Lit>,
    cfg: SolverConfig,
}

impl Solver {
    /// Builds a solver over the formula's clauses.
    ///
    /// Tautological clauses are skipped, unit clauses are asserted at the
    /// root, and an empty clause (or `trivially_unsat`) makes every solve
    /// return `Unsat`. Root units recorded in `formula.units` are *not*
    /// asserted here; composing them back into a model is the caller's job.
    pub fn new(formula: &Formula, cfg: SolverConfig) -> Solver {
        let num_vars = formula.num_vars;
        let mut phase = vec![false; num_vars];
        if cfg.seed != 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for p in phase.iter_mut() {
                *p = rng.gen();
            }
        }
        let mut s = Solver {
            num_vars,
            clauses: Vec::with_capacity(formula.num_clauses()),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![LBool::Undef; num_vars],
            varinfo: vec![
                VarInfo {
                    reason: REASON_NONE,
                    level: 0
                };
                num_vars
            ],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::with_var_count(num_vars),
            phase,
            decidable: vec![false; num_vars],
            seen: vec![false; num_vars],
            ok: !formula.trivially_unsat,
            conflicts: 0,
            decisions: 0,
            propagations: 0,
            restarts: 0,
            restart_base: 0,
            next_reduce: cfg.reduce_base,
            reductions: 0,
            simp_trail_len: 0,
            proof: None,
            proof_root_logged: 0,
            decision_trace: Vec::new(),
            cfg,
        };

        for c in &formula.clauses {
            if c.is_tautology() {
                continue;
            }
            let mut lits = c.lits().to_vec();
            lits.sort_unstable();
            lits.dedup();
            for &l in &lits {
                s.decidable[l.var().index()] = true;
            }
            match lits.len() {
                0 => s.ok = false,
                1 => {
                    if !s.assert_root(lits[0]) {
                        s.ok = false;
                    }
                }
                _ => {
                    let id = s.store_clause(lits, false, 0);
                    s.attach(id);
                }
            }
        }
        for i in 0..num_vars {
            if s.decidable[i] {
                s.heap.insert(Var::from_index(i), &s.activity);
            }
        }
        s
    }

    /// Routes DRAT output for learnt and deleted clauses into `sink`.
    pub fn set_proof(&mut self, sink: Box<dyn Write>) {
        self.proof = Some(DratWriter::new(sink));
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    #[inline]
    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    #[inline]
    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    #[inline]
    pub fn value_var(&self, v: Var) -> LBool {
        self.assigns[v.index()]
    }

    #[inline]
    pub fn value_lit(&self, l: Lit) -> LBool {
        lit_value(&self.assigns, l)
    }

    #[inline]
    pub fn activity(&self, v: Var) -> f64 {
        self.activity[v.index()]
    }

    #[inline]
    pub fn var_bump_increment(&self) -> f64 {
        self.var_inc
    }

    /// Literals of a stored clause.
    pub fn clause_lits(&self, id: ClauseId) -> &[Lit] {
        &self.clauses[id as usize].lits
    }

    /// Asserts a literal in a new decision level.
    pub fn decide(&mut self, l: Lit) {
        debug_assert_eq!(self.value_lit(l), LBool::Undef);
        self.trail_lim.push(self.trail.len());
        self.enqueue(l, REASON_NONE);
    }

    fn assert_root(&mut self, l: Lit) -> bool {
        match self.value_lit(l) {
            LBool::True => true,
            LBool::False => false,
            LBool::Undef => {
                self.enqueue(l, REASON_NONE);
                true
            }
        }
    }

    fn enqueue(&mut self, l: Lit, reason: ClauseId) {
        debug_assert_eq!(self.value_lit(l), LBool::Undef);
        let v = l.var();
        self.assigns[v.index()] = if l.is_positive() {
            LBool::True
        } else {
            LBool::False
        };
        self.varinfo[v.index()] = VarInfo {
            reason,
            level: self.decision_level(),
        };
        self.trail.push(l);
    }

    fn store_clause(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> ClauseId {
        let id = self.clauses.len() as ClauseId;
        self.clauses.push(StoredClause {
            lits,
            learnt,
            deleted: false,
            lbd,
            activity: 0.0,
        });
        id
    }

    fn attach(&mut self, id: ClauseId) {
        let c = &self.clauses[id as usize];
        debug_assert!(c.lits.len() >= 2);
        let (w0, w1) = (c.lits[0], c.lits[1]);
        self.watches[w0.index()].push(Watcher { cref: id, blocker: w1 });
        self.watches[w1.index()].push(Watcher { cref: id, blocker: w0 });
    }

    fn detach(&mut self, id: ClauseId) {
        let c = &self.clauses[id as usize];
        let (w0, w1) = (c.lits[0], c.lits[1]);
        self.watches[w0.index()].retain(|w| w.cref != id);
        self.watches[w1.index()].retain(|w| w.cref != id);
    }

    /// Two-watched-literal unit propagation to fixpoint.
    ///
    /// Returns the falsified clause on conflict. Implied literals are
    /// appended to the trail with their reason clause, whose first literal is
    /// always the implied one.
    pub fn propagate(&mut self) -> Option<ClauseId> {
        let mut confl: Option<ClauseId> = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.index()]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == LBool::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref;
                let action = {
                    let assigns = &self.assigns;
                    let c = &mut self.clauses[cref as usize];
                    if c.deleted {
                        continue 'watchers;
                    }
                    if c.lits[0] == false_lit {
                        c.lits.swap(0, 1);
                    }
                    debug_assert_eq!(c.lits[1], false_lit);
                    let first = c.lits[0];
                    if first != w.blocker && lit_value(assigns, first) == LBool::True {
                        ws[j] = Watcher {
                            cref,
                            blocker: first,
                        };
                        j += 1;
                        continue 'watchers;
                    }
                    let mut new_watch = None;
                    for k in 2..c.lits.len() {
                        if lit_value(assigns, c.lits[k]) != LBool::False {
                            c.lits.swap(1, k);
                            new_watch = Some(c.lits[1]);
                            break;
                        }
                    }
                    match new_watch {
                        Some(nw) => Ok((nw, first)),
                        None => Err(first),
                    }
                };
                match action {
                    Ok((nw, first)) => {
                        self.watches[nw.index()].push(Watcher {
                            cref,
                            blocker: first,
                        });
                    }
                    Err(first) => {
                        ws[j] = Watcher {
                            cref,
                            blocker: first,
                        };
                        j += 1;
                        if lit_value(&self.assigns, first) == LBool::False {
                            confl = Some(cref);
                            self.qhead = self.trail.len();
                            while i < ws.len() {
                                ws[j] = ws[i];
                                j += 1;
                                i += 1;
                            }
                        } else {
                            self.enqueue(first, cref);
                        }
                    }
                }
            }
            ws.truncate(j);
            self.watches[false_lit.index()] = ws;
            if confl.is_some() {
                break;
            }
        }
        confl
    }

    /// First-UIP conflict analysis.
    ///
    /// Returns the empty-clause marker when the conflict is at level 0.
    /// Bumps the activity of every variable seen during resolution (and then
    /// decays the increment, once).
    pub fn analyze(&mut self, confl: ClauseId) -> Analysis {
        if self.decision_level() == 0 {
            return Analysis {
                lits: Vec::new(),
                backtrack_level: 0,
                lbd: 0,
            };
        }
        let current = self.decision_level();
        let mut learnt: Vec<Lit> = vec![Lit::positive(Var::from_index(0))]; // placeholder
        let mut seen_vars: Vec<Var> = Vec::new();
        let mut path = 0usize;
        let mut idx = self.trail.len();
        let mut cref = confl;
        let mut resolved: Option<Lit> = None;

        loop {
            debug_assert_ne!(cref, REASON_NONE);
            if self.clauses[cref as usize].learnt {
                self.bump_clause(cref);
            }
            let c = &self.clauses[cref as usize];
            let skip = usize::from(resolved.is_some());
            for &q in &c.lits[skip..] {
                let v = q.var();
                let level = self.varinfo[v.index()].level;
                if !self.seen[v.index()] && level > 0 {
                    self.seen[v.index()] = true;
                    seen_vars.push(v);
                    if level == current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var().index()] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[p.var().index()] = false;
            path -= 1;
            if path == 0 {
                learnt[0] = !p;
                break;
            }
            cref = self.varinfo[p.var().index()].reason;
            resolved = Some(p);
        }

        if self.cfg.minimize_learnts && learnt.len() > 1 {
            // seen[] still marks the clause: drop literals whose reason is
            // subsumed by the rest of the clause (plus root facts).
            let kept: Vec<Lit> = learnt[1..]
                .iter()
                .copied()
                .filter(|&q| !self.literal_redundant(q))
                .collect();
            learnt.truncate(1);
            learnt.extend(kept);
        }

        let backtrack_level = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level_of(learnt[i].var()) > self.level_of(learnt[max_i].var()) {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level_of(learnt[1].var())
        };

        let mut levels: Vec<u32> = learnt.iter().map(|&l| self.level_of(l.var())).collect();
        levels.sort_unstable();
        levels.dedup();
        let lbd = levels.len() as u32;

        for &v in &seen_vars {
            self.seen[v.index()] = false;
        }
        self.bump_and_decay(&seen_vars);

        debug_assert_eq!(self.level_of(learnt[0].var()), current);
        debug_assert!(learnt[1..]
            .iter()
            .all(|&l| self.level_of(l.var()) < current));

        Analysis {
            lits: learnt,
            backtrack_level,
            lbd,
        }
    }

    fn literal_redundant(&self, q: Lit) -> bool {
        let v = q.var();
        let reason = self.varinfo[v.index()].reason;
        if reason == REASON_NONE {
            return false;
        }
        self.clauses[reason as usize].lits[1..].iter().all(|&p| {
            self.seen[p.var().index()] || self.varinfo[p.var().index()].level == 0
        })
    }

    #[inline]
    fn level_of(&self, v: Var) -> u32 {
        self.varinfo[v.index()].level
    }

    /// Bumps each variable's activity by the current increment, then decays
    /// the increment. Activities rescale past 1e100, preserving their order.
    pub fn bump_and_decay(&mut self, vars: &[Var]) {
        for &v in vars {
            self.activity[v.index()] += self.var_inc;
            if self.activity[v.index()] > VAR_ACTIVITY_LIMIT {
                for a in self.activity.iter_mut() {
                    *a *= VAR_ACTIVITY_RESCALE;
                }
                self.var_inc *= VAR_ACTIVITY_RESCALE;
            }
            self.heap.on_bump(v, &self.activity);
        }
        self.var_inc /= self.cfg.var_decay;
    }

    fn bump_clause(&mut self, id: ClauseId) {
        let c = &mut self.clauses[id as usize];
        c.activity += self.cla_inc;
        if c.activity > CLAUSE_ACTIVITY_LIMIT {
            for c in self.clauses.iter_mut() {
                if c.learnt {
                    c.activity *= CLAUSE_ACTIVITY_RESCALE;
                }
            }
            self.cla_inc *= CLAUSE_ACTIVITY_RESCALE;
        }
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.phase[v.index()] = l.is_positive();
            self.assigns[v.index()] = LBool::Undef;
            self.varinfo[v.index()].reason = REASON_NONE;
            if self.decidable[v.index()] {
                self.heap.insert(v, &self.activity);
            }
        }
        self.trail.truncate(lim);
        self.qhead = lim;
        self.trail_lim.truncate(level as usize);
    }

    /// Solves with the default EVSIDS policy.
    pub fn solve(&mut self) -> Result<SolveResult, SolverError> {
        self.solve_with(&mut EvsidsPolicy)
    }

    /// Runs the CDCL loop with the given decision policy.
    pub fn solve_with(
        &mut self,
        policy: &mut dyn DecisionPolicy,
    ) -> Result<SolveResult, SolverError> {
        let start = Instant::now();
        self.decision_trace.clear();
        let verdict = self.search(policy, start)?;
        if let Some(p) = &mut self.proof {
            p.flush()?;
        }
        let model = if verdict == Verdict::Sat {
            Some(
                self.assigns
                    .iter()
                    .map(|&a| a == LBool::True)
                    .collect::<Vec<bool>>(),
            )
        } else {
            None
        };
        Ok(SolveResult {
            verdict,
            model,
            stats: SolveStats {
                conflicts: self.conflicts,
                decisions: self.decisions,
                propagations: self.propagations,
                restarts: self.restarts,
                wall: start.elapsed(),
            },
            decision_trace: if self.cfg.record_decisions {
                Some(std::mem::take(&mut self.decision_trace))
            } else {
                None
            },
        })
    }

    fn search(
        &mut self,
        policy: &mut dyn DecisionPolicy,
        start: Instant,
    ) -> Result<Verdict, SolverError> {
        if !self.ok {
            self.proof_learn(&[])?;
            return Ok(Verdict::Unsat);
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.decision_level() == 0 {
                    self.proof_learn(&[])?;
                    return Ok(Verdict::Unsat);
                }
                let analysis = self.analyze(confl);
                if self.cfg.check_learnt_rup {
                    assert!(
                        self.learnt_is_rup(&analysis.lits),
                        "learnt clause is not RUP against the clause database"
                    );
                }
                self.cancel_until(analysis.backtrack_level);
                self.proof_learn(&analysis.lits)?;
                if analysis.lits.len() == 1 {
                    self.enqueue(analysis.lits[0], REASON_NONE);
                } else {
                    let lbd = analysis.lbd;
                    let id = self.store_clause(analysis.lits, true, lbd);
                    self.learnts.push(id);
                    self.attach(id);
                    self.bump_clause(id);
                    let first = self.clauses[id as usize].lits[0];
                    self.enqueue(first, id);
                }
                self.cla_inc /= self.cfg.clause_decay;

                if let Some(max) = self.cfg.max_conflicts {
                    if self.conflicts >= max {
                        return Ok(Verdict::Unknown);
                    }
                }
                if self.conflicts % 1024 == 0 {
                    if let Some(max) = self.cfg.max_time {
                        if start.elapsed() > max {
                            return Ok(Verdict::Unknown);
                        }
                    }
                }
                if self.conflicts >= self.next_reduce {
                    self.reduce_learnts()?;
                    self.reductions += 1;
                    self.next_reduce += self.cfg.reduce_base + self.cfg.reduce_inc * self.reductions;
                }
                if self.conflicts - self.restart_base
                    >= self.cfg.restart_unit * luby(self.restarts)
                {
                    self.restarts += 1;
                    self.restart_base = self.conflicts;
                    self.cancel_until(0);
                }
            } else {
                if self.cfg.check_invariants {
                    self.assert_watch_invariant();
                }
                if self.decision_level() == 0 && self.trail.len() > self.simp_trail_len {
                    self.simplify_at_root()?;
                }
                match self.next_decision(policy) {
                    None => {
                        debug_assert!(self.all_clauses_satisfied());
                        if self.cfg.check_invariants {
                            assert!(self.all_clauses_satisfied());
                        }
                        return Ok(Verdict::Sat);
                    }
                    Some(l) => {
                        debug_assert_eq!(self.value_lit(l), LBool::Undef);
                        self.decisions += 1;
                        if self.cfg.record_decisions {
                            self.decision_trace.push(l);
                        }
                        self.decide(l);
                    }
                }
            }
        }
    }

    /// Asks the policy for the next decision literal on the current state.
    pub fn next_decision(&mut self, policy: &mut dyn DecisionPolicy) -> Option<Lit> {
        let mut ctx = DecisionCtx {
            assigns: &self.assigns,
            activity: &self.activity,
            phase: &self.phase,
            heap: &mut self.heap,
            trail: &self.trail,
            trail_lim: &self.trail_lim,
            conflicts: self.conflicts,
        };
        policy.pick(&mut ctx)
    }

    /// Drops the worse half of the deletable learnt clauses, ranked by
    /// (LBD, activity). Reason clauses and clauses with LBD <= 2 are kept.
    fn reduce_learnts(&mut self) -> Result<(), SolverError> {
        let mut cands: Vec<ClauseId> = self
            .learnts
            .iter()
            .copied()
            .filter(|&id| {
                let c = &self.clauses[id as usize];
                !c.deleted && c.lbd > 2 && !self.is_locked(id)
            })
            .collect();
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            ca.lbd
                .cmp(&cb.lbd)
                .then(cb.activity.partial_cmp(&ca.activity).expect("finite"))
                .then(a.cmp(&b))
        });
        let keep = (cands.len() + 1) / 2;
        for &id in &cands[keep..] {
            self.detach(id);
            self.clauses[id as usize].deleted = true;
            self.proof_delete(id)?;
        }
        self.learnts
            .retain(|&id| !self.clauses[id as usize].deleted);
        Ok(())
    }

    fn is_locked(&self, id: ClauseId) -> bool {
        let c = &self.clauses[id as usize];
        let first = c.lits[0];
        lit_value(&self.assigns, first) == LBool::True
            && self.varinfo[first.var().index()].reason == id
    }

    /// Removes clauses satisfied at the root. Newly derived root literals are
    /// first logged to the proof so later inferences stay checkable.
    fn simplify_at_root(&mut self) -> Result<(), SolverError> {
        debug_assert_eq!(self.decision_level(), 0);
        if self.proof.is_some() {
            for i in self.proof_root_logged..self.trail.len() {
                let l = self.trail[i];
                self.proof_learn(&[l])?;
            }
        }
        self.proof_root_logged = self.trail.len();

        for id in 0..self.clauses.len() as ClauseId {
            let c = &self.clauses[id as usize];
            if c.deleted {
                continue;
            }
            let satisfied = c
                .lits
                .iter()
                .any(|&l| lit_value(&self.assigns, l) == LBool::True);
            if satisfied {
                let first = c.lits[0];
                if self.varinfo[first.var().index()].reason == id {
                    self.varinfo[first.var().index()].reason = REASON_NONE;
                }
                self.detach(id);
                self.clauses[id as usize].deleted = true;
                self.proof_delete(id)?;
            }
        }
        self.learnts
            .retain(|&id| !self.clauses[id as usize].deleted);
        self.simp_trail_len = self.trail.len();
        Ok(())
    }

    fn proof_learn(&mut self, lits: &[Lit]) -> Result<(), SolverError> {
        if let Some(p) = &mut self.proof {
            p.learn(lits)?;
        }
        Ok(())
    }

    fn proof_delete(&mut self, id: ClauseId) -> Result<(), SolverError> {
        if self.proof.is_some() {
            let lits = self.clauses[id as usize].lits.clone();
            if let Some(p) = &mut self.proof {
                p.delete(&lits)?;
            }
        }
        Ok(())
    }

    /// Naive unit propagation check that `lits` is implied by the database:
    /// asserting its negation on top of the root trail must yield a conflict.
    fn learnt_is_rup(&self, lits: &[Lit]) -> bool {
        let mut value: Vec<LBool> = vec![LBool::Undef; self.num_vars];
        let root_end = self.trail_lim.first().copied().unwrap_or(self.trail.len());
        let set = |l: Lit, value: &mut Vec<LBool>| -> bool {
            // false on contradiction
            match lit_value(value, l) {
                LBool::False => false,
                _ => {
                    value[l.var().index()] = if l.is_positive() {
                        LBool::True
                    } else {
                        LBool::False
                    };
                    true
                }
            }
        };
        for &l in &self.trail[..root_end] {
            if !set(l, &mut value) {
                return true;
            }
        }
        for &l in lits {
            if !set(!l, &mut value) {
                return true;
            }
        }
        loop {
            let mut progressed = false;
            for c in &self.clauses {
                if c.deleted {
                    continue;
                }
                let mut unassigned = None;
                let mut satisfied = false;
                let mut count = 0;
                for &l in &c.lits {
                    match lit_value(&value, l) {
                        LBool::True => {
                            satisfied = true;
                            break;
                        }
                        LBool::Undef => {
                            unassigned = Some(l);
                            count += 1;
                        }
                        LBool::False => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match (count, unassigned) {
                    (0, _) => return true, // conflict
                    (1, Some(l)) => {
                        if !set(l, &mut value) {
                            return true;
                        }
                        progressed = true;
                    }
                    _ => {}
                }
            }
            if !progressed {
                return false;
            }
        }
    }

    fn assert_watch_invariant(&self) {
        for (id, c) in self.clauses.iter().enumerate() {
            if c.deleted || c.lits.len() < 2 {
                continue;
            }
            let satisfied = c
                .lits
                .iter()
                .any(|&l| lit_value(&self.assigns, l) == LBool::True);
            if !satisfied {
                assert!(
                    lit_value(&self.assigns, c.lits[0]) != LBool::False
                        && lit_value(&self.assigns, c.lits[1]) != LBool::False,
                    "clause {id} violates the watcher invariant"
                );
            }
            for &w in &c.lits[..2] {
                assert!(
                    self.watches[w.index()].iter().any(|x| x.cref == id as ClauseId),
                    "clause {id} is not watched by literal {w}"
                );
            }
        }
    }

    fn all_clauses_satisfied(&self) -> bool {
        self.clauses.iter().all(|c| {
            c.deleted
                || c.lits
                    .iter()
                    .any(|&l| lit_value(&self.assigns, l) == LBool::True)
        })
    }
}

/// Luby sequence with base 2: 1, 1, 2, 1, 1, 2, 4, ...
fn luby(x: u64) -> u64 {
    let mut size: u64 = 1;
    let mut seq: u32 = 0;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = x;
    let mut size = size;
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}
