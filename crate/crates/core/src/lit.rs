//! Variables and literals.
//!
//! Variables are numbered `1..=num_vars` externally (the DIMACS convention)
//! and indexed `0..num_vars` internally. A literal packs a variable index and
//! a polarity bit, so negation is a single xor and literals index densely into
//! watch and occurrence lists.

use std::fmt;
use std::ops::Not;

/// A propositional variable, identified by a 0-based index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    #[inline]
    pub fn from_index(index: usize) -> Var {
        Var(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based DIMACS variable number.
    #[inline]
    pub fn to_dimacs(self) -> i32 {
        self.0 as i32 + 1
    }

    /// Builds a variable from a 1-based DIMACS number.
    #[inline]
    pub fn from_dimacs(n: i32) -> Var {
        assert!(n > 0, "DIMACS variable numbers are positive");
        Var(n as u32 - 1)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// A literal: a variable together with a polarity.
///
/// Encoded as `var_index << 1 | negated`, so `!lit` flips the low bit and
/// positive literals sort before their negations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | (!positive) as u32)
    }

    #[inline]
    pub fn positive(var: Var) -> Lit {
        Lit::new(var, true)
    }

    #[inline]
    pub fn negative(var: Var) -> Lit {
        Lit::new(var, false)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Dense index for per-literal tables.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Parses a non-zero DIMACS literal.
    #[inline]
    pub fn from_dimacs(n: i32) -> Lit {
        assert!(n != 0, "0 terminates clauses and is not a literal");
        Lit::new(Var::from_dimacs(n.abs()), n > 0)
    }

    #[inline]
    pub fn to_dimacs(self) -> i32 {
        let v = self.var().to_dimacs();
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}
