//! Shared instance sets for the criterion benchmarks.

use bcdsat_core::{gen, simplify_root, Formula};

/// Mid-size structured and random instances, pre-simplified.
pub fn decomposition_set() -> Vec<(&'static str, Formula)> {
    vec![
        ("pigeonhole-12", simplify_root(&gen::pigeonhole(12))),
        ("parity-cycle-2000", simplify_root(&gen::parity_cycle(2000))),
        ("random-3sat-1000", simplify_root(&gen::random_ksat(1000, 4200, 3, 7))),
        ("grid-coloring-20", simplify_root(&gen::grid_coloring(20))),
    ]
}

/// Small satisfiable/unsatisfiable mix that solves in milliseconds.
pub fn solving_set() -> Vec<(&'static str, Formula)> {
    let mut set = vec![
        ("pigeonhole-7", gen::pigeonhole(7)),
        ("parity-cycle-64", gen::parity_cycle(64)),
    ];
    set.push(("random-3sat-60", gen::random_ksat(60, 255, 3, 3)));
    set.push(("random-3sat-90", gen::random_ksat(90, 383, 3, 4)));
    set
}
