//! Backtracking search for bounded join-semilattices.
//!
//! `⊥ = 0`, the bottom row and column and the diagonal are forced; the
//! remaining upper-triangle cells are filled in lexicographic order and
//! mirrored. Labelings are restricted to linear extensions of the order
//! (every join is at least as large, as an index, as both arguments);
//! each finite poset has one, so no class is lost. Associativity is
//! checked on every fully determined triple after each assignment.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::canonical::{CanonicalForm, Canonize};
use crate::structure::BJoinSemilattice;

const UNSET: usize = usize::MAX;

struct Search {
    n: usize,
    table: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl Search {
    fn new(n: usize) -> Self {
        let mut table = vec![UNSET; n * n];
        for x in 0..n {
            table[x] = x;
            table[x * n] = x;
            table[x * n + x] = x;
        }
        let free = (1..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .collect();
        Search { n, table, free }
    }

    fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        self.table[x * self.n + y] = v;
        self.table[y * self.n + x] = v;
    }

    /// Associativity on every fully determined triple.
    fn assoc_ok(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = self.get(b, c);
                    if bc == UNSET {
                        continue;
                    }
                    let l = self.get(ab, c);
                    let r = self.get(a, bc);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize, found: &mut dyn FnMut(&[usize])) {
        let Some(&(x, y)) = self.free.get(k) else {
            found(&self.table);
            return;
        };
        for v in y..self.n {
            self.set(x, y, v);
            if self.assoc_ok() {
                self.run(k + 1, found);
            }
        }
        self.set(x, y, UNSET);
    }
}

fn collect(n: usize, first: Option<usize>) -> BTreeMap<CanonicalForm, BJoinSemilattice> {
    let mut search = Search::new(n);
    let mut classes = BTreeMap::new();
    let mut keep = |table: &[usize]| {
        let s = BJoinSemilattice::from_fn(n, 0, |x, y| table[x * n + y]).expect("in range");
        let (form, perm) = super::canonical::canonical_labeling(&s);
        classes.entry(form).or_insert_with(|| s.relabeled(&perm));
    };
    match first {
        None => search.run(0, &mut keep),
        Some(v) => {
            let (x, y) = search.free[0];
            search.set(x, y, v);
            if search.assoc_ok() {
                search.run(1, &mut keep);
            }
        }
    }
    classes
}

/// One canonical representative per class, sorted by canonical form.
pub(super) fn enumerate(n: usize) -> Vec<BJoinSemilattice> {
    let merged: BTreeMap<CanonicalForm, BJoinSemilattice> =
        match Search::new(n).free.first() {
            None => collect(n, None),
            Some(&(_, y)) => (y..n).into_par_iter().map(|v| collect(n, Some(v))).reduce(
                BTreeMap::new,
                |mut a, b| {
                    for (k, v) in b {
                        a.entry(k).or_insert(v);
                    }
                    a
                },
            ),
        };
    merged.into_values().collect()
}
