//! Model checking against the original formula.

use bcdsat_core::{Formula, Lit};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model mentions variable {0}, but the formula has {1}")]
    UnknownVariable(i32, usize),
    #[error("model leaves variable {0} unassigned")]
    Incomplete(i32),
    #[error("bad token {0:?} in model")]
    BadToken(String),
}

/// True iff every clause of the original (pre-simplification) formula has a
/// true literal under the model. `model[i]` is the value of variable `i+1`.
pub fn check_model(f: &Formula, model: &[bool]) -> Result<bool, ModelError> {
    if model.len() < f.num_vars {
        return Err(ModelError::Incomplete(model.len() as i32 + 1));
    }
    let holds = |l: Lit| model[l.var().index()] == l.is_positive();
    for &u in &f.units {
        if !holds(u) {
            return Ok(false);
        }
    }
    Ok(f.clauses.iter().all(|c| c.lits().iter().any(|&l| holds(l))))
}

/// Parses a model from solver output: literals from `v` lines (terminated by
/// `0`), or bare literal lists. Lines starting with anything other than `v`
/// or a literal are ignored, so a full solver log is accepted.
pub fn parse_model(text: &str, num_vars: usize) -> Result<Vec<bool>, ModelError> {
    let mut model = vec![false; num_vars];
    let mut seen = vec![false; num_vars];
    for line in text.lines() {
        let trimmed = line.trim();
        let body = if let Some(rest) = trimmed.strip_prefix("v ") {
            rest
        } else if trimmed == "v" {
            continue;
        } else if trimmed
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit() || c == '-')
        {
            trimmed
        } else {
            continue;
        };
        for token in body.split_whitespace() {
            let n: i32 = token
                .parse()
                .map_err(|_| ModelError::BadToken(token.to_string()))?;
            if n == 0 {
                continue;
            }
            let idx = (n.unsigned_abs() as usize) - 1;
            if idx >= num_vars {
                return Err(ModelError::UnknownVariable(n, num_vars));
            }
            model[idx] = n > 0;
            seen[idx] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(ModelError::Incomplete(missing as i32 + 1));
    }
    Ok(model)
}
