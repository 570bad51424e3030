//! Harness around the solver: correctness oracles (truth-table solver, model
//! checker, RUP proof checker) and the batch benchmark runner.

pub mod bench;
pub mod model;
pub mod oracle;
pub mod proof;

pub use bench::{
    bench_run, cactus_from_records, read_csv, verdict_contradictions, write_csv, BenchConfig,
    BenchOutcome, CactusSeries, RunRecord,
};
pub use model::{check_model, parse_model};
pub use oracle::{brute_force, OracleError, MAX_ORACLE_VARS};
pub use proof::{check_proof, parse_drat, ProofCheck, ProofLine};
