//! Decision variable selection guided by blocked clause decomposition.
//!
//! The decomposition's clause sequence (large set then small set, each in the
//! reverse of its BCE elimination order) gives every variable a first
//! occurrence position, with binary clauses taking priority. At decision
//! levels 1-3, while the conflict count is below a threshold, branching is
//! restricted to the unassigned literals of a six-clause window starting at
//! the position of the path's first decision variable; within the window and
//! everywhere else, selection stays EVSIDS-highest. The tables are computed
//! once before search and never updated: the policy is static.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clause::Clause;
use crate::decomp::{verify_decomposition, BlockedDecomposition};
use crate::engine::{DecisionCtx, DecisionPolicy, LBool};
use crate::formula::Formula;
use crate::lit::{Lit, Var};

/// Clauses `C_1..C_n`: the large set followed by the small set, each ordered
/// opposite to its recorded BCE elimination order.
#[derive(Debug, Clone)]
pub struct OrderedBlockedClauses {
    clauses: Vec<Clause>,
    large_len: usize,
}

impl OrderedBlockedClauses {
    pub fn from_decomposition(d: &BlockedDecomposition, f: &Formula) -> OrderedBlockedClauses {
        let mut clauses = Vec::with_capacity(f.num_clauses());
        for &ci in d.elim_order_large.iter().rev() {
            clauses.push(f.clauses[ci].clone());
        }
        for &ci in d.elim_order_small.iter().rev() {
            clauses.push(f.clauses[ci].clone());
        }
        OrderedBlockedClauses {
            clauses,
            large_len: d.large.len(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Clause `C_i`, 1-based.
    #[inline]
    pub fn clause(&self, i: usize) -> &Clause {
        &self.clauses[i - 1]
    }

    /// Number of leading clauses that came from the large set.
    #[inline]
    pub fn large_len(&self) -> usize {
        self.large_len
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }
}

/// First-occurrence position of each variable in the ordered clause
/// sequence; 0 means the variable occurs nowhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosTable {
    pos: Vec<usize>,
}

impl PosTable {
    /// Position of `v`, 1-based; 0 when absent.
    #[inline]
    pub fn get(&self, v: Var) -> usize {
        self.pos.get(v.index()).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.pos
    }
}

/// Computes the position table in two passes: binary clauses first (they take
/// priority), then all clauses for the variables still unseen.
pub fn build_pos(obc: &OrderedBlockedClauses, num_vars: usize) -> PosTable {
    let mut pos = vec![0usize; num_vars];
    for (i, c) in obc.iter().enumerate() {
        if c.len() == 2 {
            for &l in c.lits() {
                let p = &mut pos[l.var().index()];
                if *p == 0 {
                    *p = i + 1;
                }
            }
        }
    }
    for (i, c) in obc.iter().enumerate() {
        for &l in c.lits() {
            let p = &mut pos[l.var().index()];
            if *p == 0 {
                *p = i + 1;
            }
        }
    }
    PosTable { pos }
}

/// Branching mode selecting the conflict-count threshold formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchMode {
    None,
    Bcd1,
    Bcd2,
    Bcd3,
}

impl fmt::Display for BranchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BranchMode::None => "none",
            BranchMode::Bcd1 => "bcd1",
            BranchMode::Bcd2 => "bcd2",
            BranchMode::Bcd3 => "bcd3",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for BranchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<BranchMode, String> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(BranchMode::None),
            "bcd1" => Ok(BranchMode::Bcd1),
            "bcd2" => Ok(BranchMode::Bcd2),
            "bcd3" => Ok(BranchMode::Bcd3),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Conflict-count threshold for a mode, from the clause count `n` and
/// variable count `m` of the simplified formula. 0 disables the policy.
pub fn resolve_theta(mode: BranchMode, n: u64, m: u64) -> u64 {
    match mode {
        BranchMode::None => 0,
        BranchMode::Bcd1 => {
            if n > 15 * 100_000 || m > 500_000 {
                0
            } else {
                6_000_000
            }
        }
        BranchMode::Bcd2 => {
            if n > 5_000_000 || m > 1_500_000 || n < 2 * m {
                0
            } else if m > 500_000 {
                30_000
            } else {
                500_000
            }
        }
        BranchMode::Bcd3 => {
            if n > 5_000_000 || m > 1_500_000 || n < 2 * m || n > 30 * m {
                0
            } else if m > 500_000 {
                30_000
            } else if (1600..=15_000).contains(&m) {
                6_000_000
            } else {
                500_000
            }
        }
    }
}

/// Fallback threshold when no mode formula applies: 30000 for large
/// instances, 500000 for small ones.
pub fn default_theta(n: u64, m: u64) -> u64 {
    if n > 15 * 100_000 || m > 500_000 {
        30_000
    } else {
        500_000
    }
}

/// Resolved policy configuration.
#[derive(Debug, Clone)]
pub struct ModeConfig {
    pub mode: BranchMode,
    pub theta: u64,
    /// Clause window size starting at `pos[v]`.
    pub window: usize,
    /// Decision levels at which the restriction applies.
    pub levels: std::ops::RangeInclusive<u32>,
}

impl ModeConfig {
    /// Resolves theta from the mode formulas.
    pub fn resolve(mode: BranchMode, n: u64, m: u64) -> ModeConfig {
        ModeConfig::with_theta(mode, resolve_theta(mode, n, m))
    }

    /// Uses an explicit theta with the standard window and levels.
    pub fn with_theta(mode: BranchMode, theta: u64) -> ModeConfig {
        ModeConfig {
            mode,
            theta: if mode == BranchMode::None { 0 } else { theta },
            window: 6,
            levels: 1..=3,
        }
    }
}

/// One window-restricted decision, for instrumentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowDecision {
    pub lit: Lit,
    /// The path's first decision variable the window was anchored at.
    pub anchor: Var,
    /// `pos[anchor]` at the time of the decision.
    pub pos: usize,
    /// 1-based index of the window clause the literal was taken from.
    pub clause_index: usize,
    /// Decision level at the moment the hook ran.
    pub level: u32,
    /// Conflict count at the moment the hook ran (always below theta).
    pub conflicts: u64,
}

#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("decomposition fails verification against the formula")]
    InvalidDecomposition,
}

/// The decomposition-guided decision policy.
///
/// Built once from a validated decomposition; the position table is never
/// recomputed during solving.
pub struct BcdPolicy {
    obc: OrderedBlockedClauses,
    pos: PosTable,
    cfg: ModeConfig,
    trace: Option<Vec<WindowDecision>>,
}

/// Validates the decomposition and builds the policy tables.
pub fn attach_policy(
    f: &Formula,
    d: &BlockedDecomposition,
    cfg: ModeConfig,
) -> Result<BcdPolicy, PolicyError> {
    if !verify_decomposition(d, f) {
        return Err(PolicyError::InvalidDecomposition);
    }
    let obc = OrderedBlockedClauses::from_decomposition(d, f);
    let pos = build_pos(&obc, f.num_vars);
    Ok(BcdPolicy {
        obc,
        pos,
        cfg,
        trace: None,
    })
}

impl BcdPolicy {
    pub fn ordered_clauses(&self) -> &OrderedBlockedClauses {
        &self.obc
    }

    pub fn pos_table(&self) -> &PosTable {
        &self.pos
    }

    pub fn config(&self) -> &ModeConfig {
        &self.cfg
    }

    /// Starts recording window-restricted decisions.
    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn take_trace(&mut self) -> Vec<WindowDecision> {
        self.trace.take().unwrap_or_default()
    }

    fn pick_window(&self, ctx: &DecisionCtx<'_>) -> Option<WindowDecision> {
        let anchor = ctx.first_decision_var()?;
        let start = self.pos.get(anchor);
        if start == 0 {
            return None;
        }
        let end = (start + self.cfg.window - 1).min(self.obc.len());
        let mut best: Option<(Var, usize)> = None;
        for i in start..=end {
            let c = self.obc.clause(i);
            if c.lits().iter().any(|&l| ctx.value(l) == LBool::True) {
                continue; // satisfied clauses contribute nothing
            }
            for &l in c.lits() {
                if ctx.value(l) != LBool::Undef {
                    continue;
                }
                let v = l.var();
                let replace = match best {
                    None => true,
                    Some((bv, _)) => {
                        ctx.activity(v) > ctx.activity(bv)
                            || (ctx.activity(v) == ctx.activity(bv) && v.index() < bv.index())
                    }
                };
                if replace {
                    best = Some((v, i));
                }
            }
        }
        best.map(|(v, clause_index)| WindowDecision {
            lit: ctx.phase_lit(v),
            anchor,
            pos: start,
            clause_index,
            level: ctx.decision_level(),
            conflicts: ctx.conflicts(),
        })
    }
}

impl DecisionPolicy for BcdPolicy {
    fn pick(&mut self, ctx: &mut DecisionCtx<'_>) -> Option<Lit> {
        if self.cfg.mode != BranchMode::None
            && self.cfg.theta > 0
            && ctx.conflicts() < self.cfg.theta
            && self.cfg.levels.contains(&ctx.decision_level())
        {
            if let Some(pick) = self.pick_window(ctx) {
                if let Some(trace) = &mut self.trace {
                    trace.push(pick);
                }
                return Some(pick.lit);
            }
        }
        ctx.pick_global()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::pure_decompose;
    use crate::simplify::simplify_root;

    fn obc_from(clauses: &[&[i32]]) -> OrderedBlockedClauses {
        OrderedBlockedClauses {
            clauses: clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
            large_len: clauses.len(),
        }
    }

    #[test]
    fn binary_clauses_take_priority() {
        // C1=[1,2,3], C2=[-1,2], C3=[3,4]
        let obc = obc_from(&[&[1, 2, 3], &[-1, 2], &[3, 4]]);
        let pos = build_pos(&obc, 4);
        assert_eq!(pos.get(Var::from_dimacs(1)), 2);
        assert_eq!(pos.get(Var::from_dimacs(2)), 2);
        assert_eq!(pos.get(Var::from_dimacs(3)), 3);
        assert_eq!(pos.get(Var::from_dimacs(4)), 3);
    }

    #[test]
    fn absent_variable_keeps_zero() {
        let obc = obc_from(&[&[1, 2, 3]]);
        let pos = build_pos(&obc, 5);
        assert_eq!(pos.get(Var::from_dimacs(4)), 0);
        assert_eq!(pos.get(Var::from_dimacs(5)), 0);
    }

    #[test]
    fn no_binary_clauses_means_plain_first_occurrence() {
        let obc = obc_from(&[&[1, 2, 3], &[-2, 3, 4], &[4, 5, 1]]);
        let pos = build_pos(&obc, 5);
        assert_eq!(pos.get(Var::from_dimacs(1)), 1);
        assert_eq!(pos.get(Var::from_dimacs(2)), 1);
        assert_eq!(pos.get(Var::from_dimacs(3)), 1);
        assert_eq!(pos.get(Var::from_dimacs(4)), 2);
        assert_eq!(pos.get(Var::from_dimacs(5)), 3);
    }

    #[test]
    fn theta_paper_cases() {
        // group_mulr-sized instance
        assert_eq!(resolve_theta(BranchMode::Bcd1, 4_302_000, 1_052_071), 0);
        assert_eq!(resolve_theta(BranchMode::Bcd2, 4_302_000, 1_052_071), 30_000);
        // dense instance disables BCD3 via n > 30m
        assert_eq!(resolve_theta(BranchMode::Bcd3, 100_000, 2_000), 0);
        // mid-size variable count lands in the 6e6 band
        assert_eq!(resolve_theta(BranchMode::Bcd3, 50_000, 2_000), 6_000_000);
    }

    #[test]
    fn theta_zero_for_mode_none() {
        assert_eq!(resolve_theta(BranchMode::None, 10, 10), 0);
        assert_eq!(ModeConfig::with_theta(BranchMode::None, 12345).theta, 0);
    }

    #[test]
    fn ordered_clauses_reverse_elimination_order() {
        let f = simplify_root(&Formula::from_clauses(
            3,
            [[1, 2], [-1, 2], [1, -2], [-1, -2], [2, 3]],
        ));
        let d = pure_decompose(&f);
        let obc = OrderedBlockedClauses::from_decomposition(&d, &f);
        assert_eq!(obc.len(), f.num_clauses());
        // Reversing the large prefix gives back the recorded elimination order.
        let prefix: Vec<&Clause> = (1..=d.large.len()).map(|i| obc.clause(i)).collect();
        let replay: Vec<&Clause> = d
            .elim_order_large
            .iter()
            .rev()
            .map(|&ci| &f.clauses[ci])
            .collect();
        for (a, b) in prefix.iter().zip(&replay) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn attach_rejects_invalid_decomposition() {
        let f = Formula::from_clauses(2, [[1, 2], [-1, -2]]);
        let bad = BlockedDecomposition {
            large: vec![0],
            small: vec![1],
            elim_order_large: vec![1],
            elim_order_small: vec![0],
        };
        assert!(attach_policy(&f, &bad, ModeConfig::with_theta(BranchMode::Bcd1, 1)).is_err());
    }

    #[test]
    fn mode_parsing_round_trips() {
        for m in [
            BranchMode::None,
            BranchMode::Bcd1,
            BranchMode::Bcd2,
            BranchMode::Bcd3,
        ] {
            assert_eq!(m.to_string().parse::<BranchMode>().unwrap(), m);
        }
        assert!("bcd4".parse::<BranchMode>().is_err());
    }
}
