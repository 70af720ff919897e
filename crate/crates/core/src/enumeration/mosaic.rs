//! Cell-by-cell search for L-mosaics (and near-L-mosaics, for ablation).
//!
//! `e` is pinned to 0 and `ρ` is fixed per run. Diagonal cells are assigned
//! first, then off-diagonal cells in lexicographic order; each cell takes a
//! nonempty subset in cardinality-then-lexicographic order. Every cell keeps
//! a mask of elements it must contain and a mask it must avoid:
//!
//! * neutrality and lm1 seed the required masks;
//! * reversibility pushes memberships (and non-memberships) into the cells
//!   its implications mention;
//! * once the diagonal is complete, lm2 bounds every cell `a⊕b` by the
//!   diagonals containing both `a` and `b`, and lm4 is checked per cell as
//!   it is assigned.
//!
//! Leaves are re-checked in full against every enforced axiom, so the
//! propagation only has to be sound, not complete.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::axioms::MosaicAxiom;
use crate::elemset::{nonempty_subsets, ElemSet};
use crate::structure::{HyperOpTable, LMosaic};

/// Which axioms a search enforces. Nonemptiness and weak neutrality are
/// always enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Enforced {
    pub comm: bool,
    pub reversibility: bool,
    pub lm1_e: bool,
    pub lm1_id: bool,
    pub lm2: bool,
    pub lm3: bool,
    pub lm4: bool,
}

impl Enforced {
    pub const ALL: Enforced = Enforced {
        comm: true,
        reversibility: true,
        lm1_e: true,
        lm1_id: true,
        lm2: true,
        lm3: true,
        lm4: true,
    };

    /// Everything except one axiom. `None` for axioms that are never
    /// dropped (nonempty, neutrality).
    pub fn without(ax: MosaicAxiom) -> Option<Enforced> {
        let mut e = Enforced::ALL;
        match ax {
            MosaicAxiom::Comm => e.comm = false,
            MosaicAxiom::Reversibility => e.reversibility = false,
            MosaicAxiom::Lm1E => e.lm1_e = false,
            MosaicAxiom::Lm1Id => e.lm1_id = false,
            MosaicAxiom::Lm2 => e.lm2 = false,
            MosaicAxiom::Lm3 => e.lm3 = false,
            MosaicAxiom::Lm4 => e.lm4 = false,
            MosaicAxiom::Nonempty | MosaicAxiom::Neutral | MosaicAxiom::NeutralStrict => {
                return None
            }
        }
        Some(e)
    }

    fn axioms(self) -> Vec<MosaicAxiom> {
        let mut v = vec![MosaicAxiom::Nonempty, MosaicAxiom::Neutral];
        let flags = [
            (self.reversibility, MosaicAxiom::Reversibility),
            (self.comm, MosaicAxiom::Comm),
            (self.lm1_e, MosaicAxiom::Lm1E),
            (self.lm1_id, MosaicAxiom::Lm1Id),
            (self.lm2, MosaicAxiom::Lm2),
            (self.lm3, MosaicAxiom::Lm3),
            (self.lm4, MosaicAxiom::Lm4),
        ];
        v.extend(flags.iter().filter(|(on, _)| *on).map(|(_, a)| *a));
        v
    }
}

#[derive(Clone)]
struct State {
    cells: Vec<ElemSet>,
    req: Vec<ElemSet>,
    forb: Vec<ElemSet>,
}

pub(crate) struct MosaicSearch {
    n: usize,
    rho: Vec<usize>,
    enforced: Enforced,
    /// Ordered pairs represented by each slot; in commutative mode a slot
    /// stands for both `(x, y)` and `(y, x)`.
    slots: Vec<(usize, usize)>,
    slot_of: Vec<usize>,
    n_diag: usize,
    subsets: Vec<ElemSet>,
}

const E: usize = 0;

impl MosaicSearch {
    pub fn new(n: usize, rho: Vec<usize>, enforced: Enforced) -> Self {
        assert!(n >= 1 && rho.len() == n);
        let mut slots: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
        for x in 0..n {
            for y in 0..n {
                if x < y || (x > y && !enforced.comm) {
                    slots.push((x, y));
                }
            }
        }
        let mut slot_of = vec![usize::MAX; n * n];
        for (k, &(x, y)) in slots.iter().enumerate() {
            slot_of[x * n + y] = k;
            if enforced.comm {
                slot_of[y * n + x] = k;
            }
        }
        MosaicSearch {
            n,
            rho,
            enforced,
            slots,
            slot_of,
            n_diag: n,
            subsets: nonempty_subsets(n),
        }
    }

    fn slot(&self, x: usize, y: usize) -> usize {
        self.slot_of[x * self.n + y]
    }

    fn require(&self, st: &mut State, x: usize, y: usize, z: usize) -> bool {
        let k = self.slot(x, y);
        if !st.cells[k].is_empty() {
            return st.cells[k].contains(z);
        }
        st.req[k].insert(z);
        !st.forb[k].contains(z)
    }

    fn forbid(&self, st: &mut State, x: usize, y: usize, z: usize) -> bool {
        let k = self.slot(x, y);
        if !st.cells[k].is_empty() {
            return !st.cells[k].contains(z);
        }
        st.forb[k].insert(z);
        !st.req[k].contains(z) && st.forb[k] != ElemSet::full(self.n)
    }

    fn initial(&self) -> Option<State> {
        let k = self.slots.len();
        let mut st = State {
            cells: vec![ElemSet::EMPTY; k],
            req: vec![ElemSet::EMPTY; k],
            forb: vec![ElemSet::EMPTY; k],
        };
        let mut ok = true;
        for x in 0..self.n {
            ok &= self.require(&mut st, E, x, x);
            ok &= self.require(&mut st, x, E, x);
            if self.enforced.lm1_e {
                ok &= self.require(&mut st, x, x, E);
            }
            if self.enforced.lm1_id {
                ok &= self.require(&mut st, x, x, x);
            }
        }
        ok.then_some(st)
    }

    /// Reversibility consequences of `x⊕y = s`:
    /// `z ∈ x⊕y ⟹ x ∈ z⊕ρ(y) ∧ y ∈ ρ(x)⊕z`, and contrapositively
    /// `x ∈ z⊕b` (with `ρ(b) = y`) or `y ∈ a⊕z` (with `ρ(a) = x`) force
    /// `z ∈ x⊕y`.
    fn propagate_reversibility(&self, st: &mut State, x: usize, y: usize, s: ElemSet) -> bool {
        let n = self.n;
        for z in 0..n {
            if s.contains(z) {
                if !self.require(st, z, self.rho[y], x) || !self.require(st, self.rho[x], z, y) {
                    return false;
                }
            } else {
                for b in (0..n).filter(|&b| self.rho[b] == y) {
                    if !self.forbid(st, z, b, x) {
                        return false;
                    }
                }
                for a in (0..n).filter(|&a| self.rho[a] == x) {
                    if !self.forbid(st, a, z, y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn diagonal(&self, st: &State, x: usize) -> ElemSet {
        st.cells[x]
    }

    /// Checks and bounds that become available once every diagonal cell is
    /// known.
    fn diagonal_complete(&self, st: &mut State) -> bool {
        let n = self.n;
        if self.enforced.lm2 {
            for x in 0..n {
                let d = self.diagonal(st, x);
                if d.iter().any(|a| !self.diagonal(st, a).is_subset(d)) {
                    return false;
                }
            }
            for k in self.n_diag..self.slots.len() {
                let (a, b) = self.slots[k];
                let mut bound = ElemSet::full(n);
                for x in 0..n {
                    let d = self.diagonal(st, x);
                    if d.contains(a) && d.contains(b) {
                        bound = bound.intersection(d);
                    }
                }
                st.forb[k] = st.forb[k].union(ElemSet::full(n).difference(bound));
                if !st.req[k].is_disjoint(st.forb[k]) || st.forb[k] == ElemSet::full(n) {
                    return false;
                }
            }
        }
        if self.enforced.lm4 {
            for x in 0..n {
                if self.lm4_count(st, x, x, self.diagonal(st, x)) != 1 {
                    return false;
                }
            }
        }
        true
    }

    fn lm4_count(&self, st: &State, x: usize, y: usize, s: ElemSet) -> usize {
        s.iter()
            .filter(|&z| {
                let d = self.diagonal(st, z);
                d.contains(x) && d.contains(y)
            })
            .count()
    }

    fn assign(&self, st: &mut State, k: usize, s: ElemSet) -> bool {
        st.cells[k] = s;
        let (x, y) = self.slots[k];
        if self.enforced.reversibility {
            if !self.propagate_reversibility(st, x, y, s) {
                return false;
            }
            if self.enforced.comm && x != y && !self.propagate_reversibility(st, y, x, s) {
                return false;
            }
        }
        if k + 1 == self.n_diag && !self.diagonal_complete(st) {
            return false;
        }
        true
    }

    fn candidates<'a>(&'a self, st: &'a State, k: usize) -> impl Iterator<Item = ElemSet> + 'a {
        let (x, y) = self.slots[k];
        let check_lm4 = self.enforced.lm4 && k >= self.n_diag;
        self.subsets.iter().copied().filter(move |&s| {
            st.req[k].is_subset(s)
                && s.is_disjoint(st.forb[k])
                && (!check_lm4 || self.lm4_count(st, x, y, s) == 1)
        })
    }

    fn leaf(&self, st: &State) -> Option<LMosaic> {
        let n = self.n;
        let hyp = HyperOpTable::from_fn(n, |x, y| st.cells[self.slot(x, y)]).ok()?;
        let m = LMosaic::from_parts_unlabeled(hyp, E, self.rho.clone());
        self.enforced
            .axioms()
            .iter()
            .all(|ax| ax.holds(&m))
            .then_some(m)
    }

    fn dfs(
        &self,
        k: usize,
        st: &State,
        visit: &mut dyn FnMut(LMosaic) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == self.slots.len() {
            return match self.leaf(st) {
                Some(m) => visit(m),
                None => ControlFlow::Continue(()),
            };
        }
        for s in self.candidates(st, k) {
            let mut next = st.clone();
            if self.assign(&mut next, k, s) {
                self.dfs(k + 1, &next, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Depth-first traversal in the fixed search order; stops when `visit`
    /// breaks.
    pub fn run(&self, visit: &mut dyn FnMut(LMosaic) -> ControlFlow<()>) {
        if let Some(st) = self.initial() {
            let _ = self.dfs(0, &st, visit);
        }
    }

    /// All leaves, with the subtrees under the first cell searched in
    /// parallel. Results come back in search order.
    pub fn all(&self) -> Vec<LMosaic> {
        let Some(st) = self.initial() else {
            return Vec::new();
        };
        let firsts: Vec<ElemSet> = self.candidates(&st, 0).collect();
        firsts
            .into_par_iter()
            .map(|s| {
                let mut out = Vec::new();
                let mut next = st.clone();
                if self.assign(&mut next, 0, s) {
                    let _ = self.dfs(1, &next, &mut |m| {
                        out.push(m);
                        ControlFlow::Continue(())
                    });
                }
                out
            })
            .flatten()
            .collect()
    }
}

/// All involutions of `0..n`, in lexicographic order.
pub(crate) fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = p.iter().position(|&v| v == usize::MAX) else {
            out.push(p.clone());
            return;
        };
        p[i] = i;
        go(p, out);
        for j in i + 1..p.len() {
            if p[j] == usize::MAX {
                p[i] = j;
                p[j] = i;
                go(p, out);
                p[j] = usize::MAX;
            }
        }
        p[i] = usize::MAX;
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::tuples;

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, [1, 2, 4, 10, 26]);
        assert_eq!(involutions(3)[0], vec![0, 1, 2]);
    }

    /// Every symmetric (or arbitrary) table checked directly, for
    /// comparison with the pruned search.
    fn brute_force(n: usize, rho: &[usize], enforced: Enforced) -> Vec<LMosaic> {
        let subsets = nonempty_subsets(n);
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !enforced.comm || x <= y)
            .collect();
        let axioms = enforced.axioms();
        let mut out = Vec::new();
        for choice in tuples(subsets.len(), cells.len()) {
            let mut table = vec![ElemSet::EMPTY; n * n];
            for (&(x, y), &c) in cells.iter().zip(&choice) {
                table[x * n + y] = subsets[c];
                if enforced.comm {
                    table[y * n + x] = subsets[c];
                }
            }
            let hyp = HyperOpTable::new(n, table).unwrap();
            let m = LMosaic::from_parts_unlabeled(hyp, E, rho.to_vec());
            if axioms.iter().all(|a| a.holds(&m)) {
                out.push(m);
            }
        }
        out
    }

    fn sorted(mut v: Vec<LMosaic>) -> Vec<Vec<ElemSet>> {
        let mut keys: Vec<Vec<ElemSet>> = v
            .drain(..)
            .map(|m| m.table().rows().flatten().copied().collect())
            .collect();
        keys.sort();
        keys
    }

    #[test]
    fn search_matches_brute_force_identity_rho() {
        for n in 1..=3 {
            let rho: Vec<usize> = (0..n).collect();
            let search = MosaicSearch::new(n, rho.clone(), Enforced::ALL).all();
            assert_eq!(
                sorted(search),
                sorted(brute_force(n, &rho, Enforced::ALL)),
                "n={n}"
            );
        }
    }

    #[test]
    fn search_matches_brute_force_with_one_axiom_dropped() {
        for ax in MosaicAxiom::ALL {
            let Some(enf) = Enforced::without(ax) else {
                continue;
            };
            let max = if enf.comm { 3 } else { 2 };
            for n in 1..=max {
                for rho in involutions(n) {
                    let search = MosaicSearch::new(n, rho.clone(), enf).all();
                    assert_eq!(
                        sorted(search),
                        sorted(brute_force(n, &rho, enf)),
                        "dropped {ax}, n={n}, rho={rho:?}"
                    );
                }
            }
        }
    }
}
