//! Deterministic instance generators for tests and benchmarks.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::{Lit, Var};

/// Uniform random formula: each clause picks a length in
/// `min_len..=max_len`, that many distinct variables, and random polarities.
pub fn random_formula(
    num_vars: usize,
    num_clauses: usize,
    min_len: usize,
    max_len: usize,
    seed: u64,
) -> Formula {
    assert!(num_vars >= max_len.max(1) && min_len >= 1 && min_len <= max_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Formula::new(num_vars);
    for _ in 0..num_clauses {
        let len = rng.gen_range(min_len..=max_len);
        let lits: Vec<Lit> = index::sample(&mut rng, num_vars, len)
            .into_iter()
            .map(|v| Lit::new(Var::from_index(v), rng.gen()))
            .collect();
        f.add_clause(Clause::new(lits));
    }
    f
}

/// Random k-SAT with fixed clause length.
pub fn random_ksat(num_vars: usize, num_clauses: usize, k: usize, seed: u64) -> Formula {
    random_formula(num_vars, num_clauses, k, k, seed)
}

/// Pigeonhole principle with `holes + 1` pigeons: unsatisfiable.
///
/// Variable `x_{i,j}` (pigeon `i` in hole `j`) is `i * holes + j + 1`.
pub fn pigeonhole(holes: usize) -> Formula {
    let pigeons = holes + 1;
    let var = |i: usize, j: usize| (i * holes + j + 1) as i32;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for i in 0..pigeons {
        clauses.push((0..holes).map(|j| var(i, j)).collect());
    }
    for j in 0..holes {
        for i in 0..pigeons {
            for k in (i + 1)..pigeons {
                clauses.push(vec![-var(i, j), -var(k, j)]);
            }
        }
    }
    Formula::from_clauses(pigeons * holes, clauses)
}

/// Parity constraints around a cycle with odd total charge: unsatisfiable,
/// and entirely binary clauses.
///
/// Edge variables `e_1..e_len`; node `i` requires `e_i = e_{i+1}` except the
/// last node, which requires `e_len != e_1`.
pub fn parity_cycle(len: usize) -> Formula {
    assert!(len >= 2);
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for i in 0..len {
        let a = (i + 1) as i32;
        let b = ((i + 1) % len + 1) as i32;
        if i + 1 < len {
            clauses.push(vec![-a, b]);
            clauses.push(vec![a, -b]);
        } else {
            clauses.push(vec![a, b]);
            clauses.push(vec![-a, -b]);
        }
    }
    Formula::from_clauses(len, clauses)
}

/// 3-coloring of an `n`x`n` grid graph: satisfiable.
pub fn grid_coloring(n: usize) -> Formula {
    let var = |r: usize, c: usize, color: usize| (3 * (r * n + c) + color + 1) as i32;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            clauses.push((0..3).map(|k| var(r, c, k)).collect());
            for k in 0..3 {
                for k2 in (k + 1)..3 {
                    clauses.push(vec![-var(r, c, k), -var(r, c, k2)]);
                }
            }
            for k in 0..3 {
                if r + 1 < n {
                    clauses.push(vec![-var(r, c, k), -var(r + 1, c, k)]);
                }
                if c + 1 < n {
                    clauses.push(vec![-var(r, c, k), -var(r, c + 1, k)]);
                }
            }
        }
    }
    Formula::from_clauses(3 * n * n, clauses)
}

/// Perfect matching on an `n`x`n` board with two opposite corners removed:
/// unsatisfiable for even `n` (the mutilated chessboard).
///
/// One variable per domino position (grid edge between remaining squares);
/// each square must be covered exactly once.
pub fn mutilated_chessboard(n: usize) -> Formula {
    assert!(n >= 2 && n % 2 == 0);
    let removed = |r: usize, c: usize| (r == 0 && c == 0) || (r == n - 1 && c == n - 1);
    let cell = |r: usize, c: usize| r * n + c;

    let mut next = 1i32;
    let mut edges_of: Vec<Vec<i32>> = vec![Vec::new(); n * n];
    let mut pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if r + 1 < n {
                pairs.push(((r, c), (r + 1, c)));
            }
            if c + 1 < n {
                pairs.push(((r, c), (r, c + 1)));
            }
        }
    }
    for (a, b) in pairs {
        if removed(a.0, a.1) || removed(b.0, b.1) {
            continue;
        }
        let id = next;
        next += 1;
        edges_of[cell(a.0, a.1)].push(id);
        edges_of[cell(b.0, b.1)].push(id);
    }
    let num_vars = (next - 1) as usize;

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if removed(r, c) {
                continue;
            }
            let edges = &edges_of[cell(r, c)];
            clauses.push(edges.clone());
            for i in 0..edges.len() {
                for j in (i + 1)..edges.len() {
                    clauses.push(vec![-edges[i], -edges[j]]);
                }
            }
        }
    }
    Formula::from_clauses(num_vars, clauses)
}

/// Every clause subset (up to `max_clauses`) over exactly three variables.
///
/// There are 26 distinct nonempty clauses over three variables; this
/// enumerates all formulas built from `0..=max_clauses` of them.
pub fn exhaustive_three_var_formulas(max_clauses: usize) -> Vec<Formula> {
    let mut pool: Vec<Vec<i32>> = Vec::new();
    for mask in 1..27usize {
        // base-3 digits: 0 = absent, 1 = positive, 2 = negative
        let mut clause = Vec::new();
        let mut m = mask;
        for v in 1..=3i32 {
            match m % 3 {
                0 => {}
                1 => clause.push(v),
                _ => clause.push(-v),
            }
            m /= 3;
        }
        pool.push(clause);
    }
    debug_assert_eq!(pool.len(), 26);

    let mut out = vec![Formula::new(3)];
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() >= max_clauses {
            continue;
        }
        for i in start..pool.len() {
            let mut next = chosen.clone();
            next.push(i);
            let mut f = Formula::new(3);
            for &ci in &next {
                f.add_clause(Clause::from_dimacs(&pool[ci]));
            }
            out.push(f);
            stack.push((i + 1, next));
        }
    }
    out
}
