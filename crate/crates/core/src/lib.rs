//! A CDCL SAT solver whose early branching is guided by blocked clause
//! decomposition.
//!
//! The formula is split into two sets that blocked-clause elimination can
//! each remove completely. Ordering the clauses by the reverse of their
//! elimination order yields a per-variable first-occurrence table; for the
//! first decision levels of every path, while the conflict count stays below
//! a mode-dependent threshold, the solver branches only on literals from a
//! small clause window anchored at the path's first decision variable.
//!
//! The crates are organized around that pipeline:
//!
//! - [`dimacs`], [`formula`], [`simplify`]: CNF model, parsing, root-level
//!   simplification;
//! - [`bce`], [`decomp`]: blocked-clause predicates, elimination, and the
//!   two-set decomposition;
//! - [`engine`]: the CDCL search loop with a pluggable decision policy;
//! - [`policy`]: the decomposition-guided branching restriction;
//! - [`driver`]: the end-to-end solve pipeline;
//! - [`gen`]: deterministic instance generators.

pub mod bce;
pub mod clause;
pub mod decomp;
pub mod dimacs;
pub mod driver;
pub mod drat;
pub mod engine;
pub mod formula;
pub mod gen;
mod heap;
pub mod index;
pub mod lit;
pub mod policy;
pub mod simplify;

pub use clause::Clause;
pub use decomp::{
    improve_decomposition, pure_decompose, verify_decomposition, BlockedDecomposition,
};
pub use dimacs::{parse_dimacs, parse_dimacs_str, write_dimacs, write_dimacs_string};
pub use driver::{solve_formula, SolveOptions, SolveOutcome};
pub use engine::{
    LBool, SolveResult, SolveStats, Solver, SolverConfig, SolverError, Verdict,
};
pub use formula::Formula;
pub use lit::{Lit, Var};
pub use policy::{
    attach_policy, build_pos, resolve_theta, BcdPolicy, BranchMode, ModeConfig,
    OrderedBlockedClauses, PosTable,
};
pub use simplify::simplify_root;
