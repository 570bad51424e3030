//! Indexed max-heap over variables, ordered by activity.
//!
//! Activities live outside the heap (they are bumped by the solver), so every
//! operation takes the activity slice. Ties break toward the lower variable
//! index, which keeps decisions deterministic.

use crate::lit::Var;

const NONE: usize = usize::MAX;

#[derive(Debug, Default)]
pub struct VarHeap {
    heap: Vec<Var>,
    pos: Vec<usize>,
}

#[inline]
fn better(a: Var, b: Var, act: &[f64]) -> bool {
    let (aa, ab) = (act[a.index()], act[b.index()]);
    aa > ab || (aa == ab && a.index() < b.index())
}

impl VarHeap {
    pub fn with_var_count(num_vars: usize) -> VarHeap {
        VarHeap {
            heap: Vec::with_capacity(num_vars),
            pos: vec![NONE; num_vars],
        }
    }

    #[inline]
    pub fn contains(&self, v: Var) -> bool {
        self.pos[v.index()] != NONE
    }

    /// Inserts `v` unless it is already present.
    pub fn insert(&mut self, v: Var, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v.index()] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    /// Removes and returns the best variable.
    pub fn pop_max(&mut self, act: &[f64]) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.pos[top.index()] = NONE;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last.index()] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    /// Restores heap order after `v`'s activity increased.
    pub fn on_bump(&mut self, v: Var, act: &[f64]) {
        if let Some(&i) = self.pos.get(v.index()) {
            if i != NONE {
                self.sift_up(i, act);
            }
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if better(self.heap[i], self.heap[parent], act) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let mut child = left;
            if right < self.heap.len() && better(self.heap[right], self.heap[left], act) {
                child = right;
            }
            if better(self.heap[child], self.heap[i], act) {
                self.swap(i, child);
                i = child;
            } else {
                break;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i].index()] = i;
        self.pos[self.heap[j].index()] = j;
    }
}
