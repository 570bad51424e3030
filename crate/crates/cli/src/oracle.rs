//! Ground-truth verdicts by truth-table enumeration.
//!
//! Evaluates 64 assignments per step: the low six variables become fixed bit
//! patterns inside a word, the remaining variables enumerate word blocks.
//! This shares nothing with the CDCL engine, which is the point.

use bcdsat_core::{Formula, Lit, Verdict};
use thiserror::Error;

/// Hard cap: enumeration beyond this is refused.
pub const MAX_ORACLE_VARS: usize = 24;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("formula has {0} variables; the oracle enumerates at most {MAX_ORACLE_VARS}")]
    TooManyVariables(usize),
}

const WORD_VARS: usize = 6;

/// Bit column of variable `v` within a 64-assignment block: bit `b` holds
/// the value of `v` in local assignment `b`.
fn low_pattern(v: usize) -> u64 {
    debug_assert!(v < WORD_VARS);
    let mut p = 0u64;
    for b in 0..64 {
        if (b >> v) & 1 == 1 {
            p |= 1u64 << b;
        }
    }
    p
}

/// Truth-table verdict for the formula, clauses and units included.
pub fn brute_force(f: &Formula) -> Result<Verdict, OracleError> {
    if f.num_vars > MAX_ORACLE_VARS {
        return Err(OracleError::TooManyVariables(f.num_vars));
    }
    if f.trivially_unsat || f.clauses.iter().any(|c| c.is_empty()) {
        return Ok(Verdict::Unsat);
    }

    let n = f.num_vars;
    let low = n.min(WORD_VARS);
    let full_mask: u64 = if 1usize << low == 64 {
        u64::MAX
    } else {
        (1u64 << (1usize << low)) - 1
    };
    let patterns: Vec<u64> = (0..WORD_VARS).map(low_pattern).collect();
    let blocks: u64 = 1u64 << (n - low);

    let column = |l: Lit, block: u64| -> u64 {
        let v = l.var().index();
        let col = if v < low {
            patterns[v]
        } else if (block >> (v - low)) & 1 == 1 {
            u64::MAX
        } else {
            0
        };
        if l.is_positive() {
            col
        } else {
            !col
        }
    };

    for block in 0..blocks {
        let mut acc = full_mask;
        for &u in &f.units {
            acc &= column(u, block);
            if acc == 0 {
                break;
            }
        }
        for c in &f.clauses {
            if acc == 0 {
                break;
            }
            let mut clause_mask = 0u64;
            for &l in c.lits() {
                clause_mask |= column(l, block);
                if clause_mask == full_mask {
                    break;
                }
            }
            acc &= clause_mask;
        }
        if acc != 0 {
            return Ok(Verdict::Sat);
        }
    }
    Ok(Verdict::Unsat)
}
