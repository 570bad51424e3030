//! DIMACS CNF reading and writing.
//!
//! Parsing is tolerant the way benchmark collections require: clause counts
//! that disagree with the header and literals beyond the declared variable
//! range produce warnings, not errors. Clauses are split on `0` tokens
//! regardless of line breaks.

use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::Lit;

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {msg}")]
    BadHeader { line: usize, msg: String },
    #[error("line {line}: clause data before the \"p cnf\" header")]
    ClauseBeforeHeader { line: usize },
    #[error("missing \"p cnf\" header")]
    MissingHeader,
    #[error("line {line}: bad literal token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: missing terminating 0 at end of input")]
    UnterminatedClause { line: usize },
    #[error("read error: {0}")]
    Io(#[from] io::Error),
}

/// Non-fatal oddities found while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A literal exceeded the declared variable count; the formula was grown.
    VariablesGrown { declared: usize, actual: usize },
    /// The number of parsed clauses disagrees with the header.
    ClauseCountMismatch { declared: usize, actual: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::VariablesGrown { declared, actual } => write!(
                f,
                "header declares {} variables but literals reach {}; growing",
                declared, actual
            ),
            ParseWarning::ClauseCountMismatch { declared, actual } => write!(
                f,
                "header declares {} clauses but input has {}",
                declared, actual
            ),
        }
    }
}

/// A parsed formula together with any warnings.
#[derive(Debug)]
pub struct Parsed {
    pub formula: Formula,
    pub warnings: Vec<ParseWarning>,
}

/// Parses DIMACS CNF from a buffered reader.
pub fn parse_dimacs<R: BufRead>(input: R) -> Result<Parsed, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut formula = Formula::new(0);
    let mut declared_vars = 0usize;
    let mut grown_to = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut open_clause_line = 0usize;
    let mut line_no = 0usize;

    for line in input.lines() {
        let line = line?;
        line_no += 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        // '%' ends the clause section in some benchmark collections.
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::BadHeader {
                    line: line_no,
                    msg: "duplicate header".into(),
                });
            }
            let mut it = trimmed.split_whitespace();
            it.next(); // "p"
            if it.next() != Some("cnf") {
                return Err(DimacsError::BadHeader {
                    line: line_no,
                    msg: "expected \"p cnf <vars> <clauses>\"".into(),
                });
            }
            let vars = it
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| DimacsError::BadHeader {
                    line: line_no,
                    msg: "bad variable count".into(),
                })?;
            let clauses = it
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| DimacsError::BadHeader {
                    line: line_no,
                    msg: "bad clause count".into(),
                })?;
            if it.next().is_some() {
                return Err(DimacsError::BadHeader {
                    line: line_no,
                    msg: "trailing tokens".into(),
                });
            }
            header = Some((vars, clauses));
            declared_vars = vars;
            formula.num_vars = vars;
            continue;
        }

        if header.is_none() {
            return Err(DimacsError::ClauseBeforeHeader { line: line_no });
        }
        for token in trimmed.split_whitespace() {
            let n: i32 = token.parse().map_err(|_| DimacsError::BadToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if n == 0 {
                formula.add_clause(Clause::new(std::mem::take(&mut current)));
            } else {
                if current.is_empty() {
                    open_clause_line = line_no;
                }
                let lit = Lit::from_dimacs(n);
                if lit.var().index() >= declared_vars {
                    grown_to = grown_to.max(lit.var().index() + 1);
                }
                current.push(lit);
            }
        }
    }

    let (_, declared_clauses) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause {
            line: open_clause_line,
        });
    }

    let mut warnings = Vec::new();
    if grown_to > declared_vars {
        warnings.push(ParseWarning::VariablesGrown {
            declared: declared_vars,
            actual: grown_to,
        });
    }
    if formula.num_clauses() != declared_clauses {
        warnings.push(ParseWarning::ClauseCountMismatch {
            declared: declared_clauses,
            actual: formula.num_clauses(),
        });
    }
    Ok(Parsed { formula, warnings })
}

/// Parses DIMACS CNF from a string.
pub fn parse_dimacs_str(s: &str) -> Result<Parsed, DimacsError> {
    parse_dimacs(s.as_bytes())
}

/// Writes a formula in DIMACS CNF.
///
/// Root units are written as unit clauses and a trivially-unsat marker as an
/// empty clause line, so the output is logically identical to the input:
/// parsing it back yields the same clause multiset after normalization.
pub fn write_dimacs<W: Write>(f: &Formula, mut w: W) -> io::Result<()> {
    let extra = f.units.len() + usize::from(f.trivially_unsat);
    writeln!(w, "p cnf {} {}", f.num_vars, f.num_clauses() + extra)?;
    for &u in &f.units {
        writeln!(w, "{} 0", u.to_dimacs())?;
    }
    if f.trivially_unsat {
        writeln!(w, "0")?;
    }
    for c in &f.clauses {
        for &l in c.lits() {
            write!(w, "{} ", l.to_dimacs())?;
        }
        writeln!(w, "0")?;
    }
    Ok(())
}

/// [`write_dimacs`] into a `String`.
pub fn write_dimacs_string(f: &Formula) -> String {
    let mut buf = Vec::new();
    write_dimacs(f, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}
