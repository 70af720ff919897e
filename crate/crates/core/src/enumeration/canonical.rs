//! Canonical forms by permutation minimization.
//!
//! Elements are first sorted by an isomorphism-invariant key (the
//! distinguished element always sorts first), and only relabelings that
//! respect that sorting are scanned. The canonical form is the
//! lexicographically least encoding among them.

use std::fmt;

use thiserror::Error;

use crate::structure::{BJoinSemilattice, LMosaic, Structure};

const TAG_BJOIN: u8 = b'J';
const TAG_LMOSAIC: u8 = b'M';

/// Byte string identifying an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("cannot compare a {0} with a {1}")]
    KindMismatch(&'static str, &'static str),
    #[error("cannot compare structures of sizes {0} and {1}")]
    SizeMismatch(usize, usize),
}

/// Structures that can be relabeled and encoded for canonicalization.
pub trait Canonize: Sized {
    fn size(&self) -> usize;

    /// Per-element key preserved by every isomorphism.
    fn invariant(&self, x: usize) -> Vec<usize>;

    /// Encoding of the structure relabeled along `x -> perm[x]`.
    fn encode(&self, perm: &[usize], inv: &[usize], out: &mut Vec<u8>);

    fn relabeled(&self, perm: &[usize]) -> Self;

    fn canonical_form(&self) -> CanonicalForm {
        canonical_labeling(self).0
    }

    /// The structure relabeled into canonical position.
    fn canonical(&self) -> Self {
        self.relabeled(&canonical_labeling(self).1)
    }
}

impl Canonize for BJoinSemilattice {
    fn size(&self) -> usize {
        BJoinSemilattice::size(self)
    }

    fn invariant(&self, x: usize) -> Vec<usize> {
        let n = self.size();
        let below = (0..n).filter(|&y| self.leq(y, x)).count();
        let above = (0..n).filter(|&y| self.leq(x, y)).count();
        vec![usize::from(x != self.bot()), below, above]
    }

    fn encode(&self, perm: &[usize], inv: &[usize], out: &mut Vec<u8>) {
        let n = self.size();
        out.push(TAG_BJOIN);
        out.push(n as u8);
        out.push(perm[self.bot()] as u8);
        for a in 0..n {
            for b in 0..n {
                out.push(perm[self.table().get(inv[a], inv[b])] as u8);
            }
        }
    }

    fn relabeled(&self, perm: &[usize]) -> Self {
        self.relabel(perm)
    }
}

impl Canonize for LMosaic {
    fn size(&self) -> usize {
        LMosaic::size(self)
    }

    fn invariant(&self, x: usize) -> Vec<usize> {
        let n = self.size();
        let t = self.table();
        let in_diagonals = (0..n).filter(|&y| t.get(y, y).contains(x)).count();
        let row_total: usize = (0..n).map(|y| t.get(x, y).len()).sum();
        vec![
            usize::from(x != self.e()),
            t.get(x, x).len(),
            in_diagonals,
            row_total,
            usize::from(self.rho()[x] != x),
        ]
    }

    fn encode(&self, perm: &[usize], inv: &[usize], out: &mut Vec<u8>) {
        let n = self.size();
        out.push(TAG_LMOSAIC);
        out.push(n as u8);
        out.push(perm[self.e()] as u8);
        for a in 0..n {
            out.push(perm[self.rho()[inv[a]]] as u8);
        }
        for a in 0..n {
            for b in 0..n {
                let s = self.table().get(inv[a], inv[b]).map(|z| perm[z]);
                out.extend_from_slice(&s.bits().to_be_bytes());
            }
        }
    }

    fn relabeled(&self, perm: &[usize]) -> Self {
        self.relabel(perm)
    }
}

/// Canonical form and a permutation realizing it.
pub fn canonical_labeling<T: Canonize>(s: &T) -> (CanonicalForm, Vec<usize>) {
    let n = s.size();
    let mut order: Vec<usize> = (0..n).collect();
    let keys: Vec<Vec<usize>> = (0..n).map(|x| s.invariant(x)).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));

    // Blocks of equal key; block elements may land on any of the block's
    // positions.
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    for (pos, &x) in order.iter().enumerate() {
        match blocks.last_mut() {
            Some((_, members)) if keys[members[0]] == keys[x] => members.push(x),
            _ => blocks.push((pos, vec![x])),
        }
    }

    let mut perm = vec![0; n];
    let mut inv = vec![0; n];
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut buf = Vec::new();
    search_blocks(&blocks, 0, &mut perm, &mut inv, &mut |perm, inv| {
        buf.clear();
        s.encode(perm, inv, &mut buf);
        if best.as_ref().is_none_or(|(b, _)| buf < *b) {
            best = Some((buf.clone(), perm.to_vec()));
        }
    });
    let (bytes, perm) = best.expect("at least one labeling");
    (CanonicalForm(bytes), perm)
}

fn search_blocks(
    blocks: &[(usize, Vec<usize>)],
    k: usize,
    perm: &mut [usize],
    inv: &mut [usize],
    visit: &mut dyn FnMut(&[usize], &[usize]),
) {
    let Some((start, members)) = blocks.get(k) else {
        visit(perm, inv);
        return;
    };
    let mut items = members.clone();
    permute(&mut items, 0, &mut |arrangement| {
        for (i, &x) in arrangement.iter().enumerate() {
            perm[x] = start + i;
            inv[start + i] = x;
        }
        search_blocks(blocks, k + 1, perm, inv, visit);
    });
}

/// Visit every arrangement of `items[k..]` (in place swaps).
fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn tables_match<T: Canonize>(a: &T, b: &T, perm: &[usize]) -> bool {
    let n = a.size();
    let id: Vec<usize> = (0..n).collect();
    let mut inv = vec![0; n];
    for (x, &p) in perm.iter().enumerate() {
        inv[p] = x;
    }
    let (mut ea, mut eb) = (Vec::new(), Vec::new());
    a.encode(perm, &inv, &mut ea);
    b.encode(&id, &id, &mut eb);
    ea == eb
}

/// A permutation `π` with `a` relabeled along `π` equal to `b`, if any.
pub fn isomorphism<T: Canonize>(a: &T, b: &T) -> Result<Option<Vec<usize>>, IsoError> {
    if a.size() != b.size() {
        return Err(IsoError::SizeMismatch(a.size(), b.size()));
    }
    let (fa, pa) = canonical_labeling(a);
    let (fb, pb) = canonical_labeling(b);
    if fa != fb {
        return Ok(None);
    }
    let mut inv_b = vec![0; pb.len()];
    for (x, &p) in pb.iter().enumerate() {
        inv_b[p] = x;
    }
    let perm: Vec<usize> = pa.iter().map(|&p| inv_b[p]).collect();
    debug_assert!(tables_match(a, b, &perm));
    Ok(Some(perm))
}

/// Permutation matching equal labels, when both carriers are labeled with
/// the same label set.
fn label_matching(a: &Structure, b: &Structure) -> Option<Vec<usize>> {
    let (la, lb) = (a.carrier().labels()?, b.carrier().labels()?);
    la.iter().map(|l| lb.iter().position(|m| m == l)).collect()
}

/// Isomorphism test across either structure kind. When both carriers carry
/// the same labels and the label-preserving relabeling is an isomorphism,
/// that one is returned.
pub fn is_isomorphic(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>, IsoError> {
    if a.size() != b.size() {
        return Err(IsoError::SizeMismatch(a.size(), b.size()));
    }
    let by_labels = label_matching(a, b);
    match (a, b) {
        (Structure::BJoin(x), Structure::BJoin(y)) => {
            if let Some(p) = by_labels.filter(|p| tables_match(x, y, p)) {
                return Ok(Some(p));
            }
            isomorphism(x, y)
        }
        (Structure::LMosaic(x), Structure::LMosaic(y)) => {
            if let Some(p) = by_labels.filter(|p| tables_match(x, y, p)) {
                return Ok(Some(p));
            }
            isomorphism(x, y)
        }
        _ => Err(IsoError::KindMismatch(a.kind(), b.kind())),
    }
}

pub fn canonical_form(s: &Structure) -> CanonicalForm {
    match s {
        Structure::BJoin(x) => x.canonical_form(),
        Structure::LMosaic(x) => x.canonical_form(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elemset::ElemSet;
    use crate::nakano::nakano;

    #[test]
    fn relabelings_of_diamond_agree() {
        let d = BJoinSemilattice::diamond();
        let r = d.relabel(&[2, 0, 3, 1]);
        assert_eq!(d.canonical_form(), r.canonical_form());
        let p = isomorphism(&r, &d).unwrap().unwrap();
        assert_eq!(r.relabel(&p).table(), d.table());
    }

    #[test]
    fn chain_and_diamond_differ() {
        let c = BJoinSemilattice::chain(4).unwrap();
        let d = BJoinSemilattice::diamond();
        assert_ne!(c.canonical_form(), d.canonical_form());
        assert_eq!(isomorphism(&c, &d).unwrap(), None);
    }

    #[test]
    fn kinds_are_tagged() {
        let s = BJoinSemilattice::chain(1).unwrap();
        let m = nakano(&s).unwrap();
        assert_ne!(
            canonical_form(&Structure::BJoin(s.clone())),
            canonical_form(&Structure::LMosaic(m.clone()))
        );
        assert_eq!(
            is_isomorphic(&Structure::BJoin(s), &Structure::LMosaic(m)),
            Err(IsoError::KindMismatch("bjoin", "lmosaic"))
        );
    }

    #[test]
    fn swapped_atoms_found_through_labels() {
        let d = BJoinSemilattice::diamond();
        let swapped = d.relabel(&[0, 2, 1, 3]);
        let p = is_isomorphic(&Structure::BJoin(d.clone()), &Structure::BJoin(swapped))
            .unwrap()
            .unwrap();
        assert_eq!(p, vec![0, 2, 1, 3]);
        let same = is_isomorphic(&Structure::BJoin(d.clone()), &Structure::BJoin(d)).unwrap();
        assert_eq!(same, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn size_mismatch() {
        let a = Structure::BJoin(BJoinSemilattice::chain(2).unwrap());
        let b = Structure::BJoin(BJoinSemilattice::chain(3).unwrap());
        assert_eq!(is_isomorphic(&a, &b), Err(IsoError::SizeMismatch(2, 3)));
    }

    #[test]
    fn canonical_puts_distinguished_first() {
        let m = nakano(&BJoinSemilattice::diamond().relabel(&[3, 0, 1, 2])).unwrap();
        assert_eq!(m.e(), 3);
        let c = m.canonical();
        assert_eq!(c.e(), 0);
        assert_eq!(c.hyper(0, 0), ElemSet::singleton(0));
        assert_eq!(c.canonical_form(), m.canonical_form());
    }
}
