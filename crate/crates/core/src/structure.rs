//! Carriers, operation tables and the two structure kinds.
//!
//! Constructors validate shape only: index ranges, table dimensions and
//! nonempty hyperoperation cells. Whether a table satisfies the algebraic
//! axioms is decided by [`crate::axioms`], so structures that break an
//! axiom can still be built and inspected.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::elemset::{ElemSet, MAX_CARRIER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("carrier of size {0} exceeds the limit of {MAX_CARRIER}")]
    CarrierTooLarge(usize),
    #[error("expected {expected} labels, got {actual}")]
    LabelCount { expected: usize, actual: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("table has {actual} cells, expected {expected}")]
    TableShape { expected: usize, actual: usize },
    #[error("{what} index {index} out of range for carrier of size {size}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("empty hyperoperation cell at ({0},{1})")]
    EmptyCell(usize, usize),
    #[error("cell ({x},{y}) contains element outside the carrier of size {size}")]
    CellOutOfRange { x: usize, y: usize, size: usize },
}

fn check_index(what: &'static str, index: usize, size: usize) -> Result<(), StructureError> {
    if index < size {
        Ok(())
    } else {
        Err(StructureError::IndexOutOfRange { what, index, size })
    }
}

/// A finite carrier `{0, .., n-1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Result<Self, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyCarrier);
        }
        if size > MAX_CARRIER {
            return Err(StructureError::CarrierTooLarge(size));
        }
        Ok(Carrier { size, labels: None })
    }

    pub fn with_labels(size: usize, labels: Vec<String>) -> Result<Self, StructureError> {
        let mut c = Carrier::new(size)?;
        if labels.len() != size {
            return Err(StructureError::LabelCount {
                expected: size,
                actual: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(StructureError::DuplicateLabel(l.clone()));
            }
        }
        c.labels = Some(labels);
        Ok(c)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label, or its index.
    pub fn name(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.size)
    }

    /// Carrier with labels carried along a relabeling `x -> perm[x]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Carrier {
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); self.size];
            for (x, name) in l.iter().enumerate() {
                out[perm[x]] = name.clone();
            }
            out
        });
        Carrier {
            size: self.size,
            labels,
        }
    }
}

/// Total binary operation, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinOpTable {
    n: usize,
    cells: Vec<usize>,
}

impl BinOpTable {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, StructureError> {
        if cells.len() != n * n {
            return Err(StructureError::TableShape {
                expected: n * n,
                actual: cells.len(),
            });
        }
        for &v in &cells {
            check_index("table entry", v, n)?;
        }
        Ok(BinOpTable { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, StructureError> {
        let cells = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        BinOpTable::new(n, cells)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n)
    }
}

/// Set-valued binary operation; every cell is a nonempty subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperOpTable {
    n: usize,
    cells: Vec<ElemSet>,
}

impl HyperOpTable {
    pub fn new(n: usize, cells: Vec<ElemSet>) -> Result<Self, StructureError> {
        if cells.len() != n * n {
            return Err(StructureError::TableShape {
                expected: n * n,
                actual: cells.len(),
            });
        }
        let all = ElemSet::full(n);
        for (i, s) in cells.iter().enumerate() {
            let (x, y) = (i / n, i % n);
            if s.is_empty() {
                return Err(StructureError::EmptyCell(x, y));
            }
            if !s.is_subset(all) {
                return Err(StructureError::CellOutOfRange { x, y, size: n });
            }
        }
        Ok(HyperOpTable { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> ElemSet) -> Result<Self, StructureError> {
        let cells = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        HyperOpTable::new(n, cells)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> ElemSet {
        self.cells[x * self.n + y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ElemSet]> {
        self.cells.chunks(self.n)
    }
}

/// `(L, ∨, ⊥)` as an explicit table. Not necessarily a semilattice; see
/// [`crate::axioms::check_bjoin`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BJoinSemilattice {
    carrier: Carrier,
    join: BinOpTable,
    bot: usize,
}

impl BJoinSemilattice {
    pub fn new(carrier: Carrier, join: BinOpTable, bot: usize) -> Result<Self, StructureError> {
        let n = carrier.size();
        if join.size() != n {
            return Err(StructureError::TableShape {
                expected: n * n,
                actual: join.size() * join.size(),
            });
        }
        check_index("bot", bot, n)?;
        Ok(BJoinSemilattice { carrier, join, bot })
    }

    /// Unlabeled structure from a join function.
    pub fn from_fn(
        n: usize,
        bot: usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, StructureError> {
        BJoinSemilattice::new(Carrier::new(n)?, BinOpTable::from_fn(n, join)?, bot)
    }

    /// The chain `0 < 1 < .. < n-1` with `max` as join.
    pub fn chain(n: usize) -> Result<Self, StructureError> {
        BJoinSemilattice::from_fn(n, 0, |x, y| x.max(y))
    }

    /// The four-element lattice `⊥ < a, b < ⊤` with `a`, `b` incomparable.
    pub fn diamond() -> Self {
        // 0 = ⊥, 1 = a, 2 = b, 3 = ⊤
        let join = |x: usize, y: usize| match (x, y) {
            _ if x == y => x,
            (0, o) | (o, 0) => o,
            _ => 3,
        };
        let carrier = Carrier::with_labels(4, ["bot", "a", "b", "top"].map(String::from).to_vec())
            .expect("valid labels");
        BJoinSemilattice::new(carrier, BinOpTable::from_fn(4, join).expect("in range"), 0)
            .expect("valid shape")
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn table(&self) -> &BinOpTable {
        &self.join
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    /// `x ∨ y`. Panics if either index is out of range.
    pub fn join(&self, x: usize, y: usize) -> usize {
        assert!(
            x < self.size() && y < self.size(),
            "element index out of range"
        );
        self.join.get(x, y)
    }

    /// The order of joins: `x ≤ y ⟺ x ∨ y = y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    /// Relabel along `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> BJoinSemilattice {
        let n = self.size();
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let join = BinOpTable::from_fn(n, |a, b| perm[self.join.get(inv[a], inv[b])])
            .expect("relabeling preserves range");
        BJoinSemilattice {
            carrier: self.carrier.permuted(perm),
            join,
            bot: perm[self.bot],
        }
    }
}

/// `(A, ⊕, e, ρ)` as explicit tables. Not necessarily an L-mosaic; see
/// [`crate::axioms::check_lmosaic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LMosaic {
    carrier: Carrier,
    hyp: HyperOpTable,
    e: usize,
    rho: Vec<usize>,
}

impl LMosaic {
    pub fn new(
        carrier: Carrier,
        hyp: HyperOpTable,
        e: usize,
        rho: Vec<usize>,
    ) -> Result<Self, StructureError> {
        let n = carrier.size();
        if hyp.size() != n {
            return Err(StructureError::TableShape {
                expected: n * n,
                actual: hyp.size() * hyp.size(),
            });
        }
        check_index("e", e, n)?;
        if rho.len() != n {
            return Err(StructureError::TableShape {
                expected: n,
                actual: rho.len(),
            });
        }
        for &r in &rho {
            check_index("rho entry", r, n)?;
        }
        Ok(LMosaic {
            carrier,
            hyp,
            e,
            rho,
        })
    }

    /// Unlabeled structure with `ρ = id` from a cell function.
    pub fn from_fn(
        n: usize,
        e: usize,
        hyp: impl Fn(usize, usize) -> ElemSet,
    ) -> Result<Self, StructureError> {
        LMosaic::new(
            Carrier::new(n)?,
            HyperOpTable::from_fn(n, hyp)?,
            e,
            (0..n).collect(),
        )
    }

    pub(crate) fn from_parts_unlabeled(hyp: HyperOpTable, e: usize, rho: Vec<usize>) -> Self {
        let carrier = Carrier::new(hyp.size()).expect("table size already validated");
        debug_assert!(e < hyp.size() && rho.len() == hyp.size());
        LMosaic {
            carrier,
            hyp,
            e,
            rho,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn table(&self) -> &HyperOpTable {
        &self.hyp
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    /// `x ⊕ y`. Panics if either index is out of range; use
    /// [`LMosaic::checked_hyper`] for untrusted indices.
    pub fn hyper(&self, x: usize, y: usize) -> ElemSet {
        assert!(
            x < self.size() && y < self.size(),
            "element index out of range"
        );
        self.hyp.get(x, y)
    }

    pub fn checked_hyper(&self, x: usize, y: usize) -> Result<ElemSet, StructureError> {
        check_index("x", x, self.size())?;
        check_index("y", y, self.size())?;
        Ok(self.hyp.get(x, y))
    }

    fn assert_in_carrier(&self, s: ElemSet) {
        assert!(
            s.is_subset(self.carrier.all()),
            "set {s} not inside the carrier"
        );
    }

    /// `⋃ { x ⊕ y : x ∈ xs, y ∈ ys }`.
    pub fn set_mul(&self, xs: ElemSet, ys: ElemSet) -> ElemSet {
        self.assert_in_carrier(xs);
        self.assert_in_carrier(ys);
        let mut out = ElemSet::EMPTY;
        for x in xs {
            for y in ys {
                out = out.union(self.hyp.get(x, y));
            }
        }
        out
    }

    /// `⋃ { x ⊕ y : y ∈ ys }`.
    pub fn right_mul(&self, x: usize, ys: ElemSet) -> ElemSet {
        self.assert_in_carrier(ys);
        ys.iter()
            .fold(ElemSet::EMPTY, |acc, y| acc.union(self.hyper(x, y)))
    }

    /// `⋃ { x ⊕ y : x ∈ xs }`.
    pub fn left_mul(&self, xs: ElemSet, y: usize) -> ElemSet {
        self.assert_in_carrier(xs);
        xs.iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(self.hyper(x, y)))
    }

    pub(crate) fn with_carrier(mut self, carrier: Carrier) -> Self {
        debug_assert_eq!(carrier.size(), self.size());
        self.carrier = carrier;
        self
    }

    /// Relabel along `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> LMosaic {
        let n = self.size();
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let hyp = HyperOpTable::from_fn(n, |a, b| self.hyp.get(inv[a], inv[b]).map(|z| perm[z]))
            .expect("relabeling preserves shape");
        LMosaic {
            carrier: self.carrier.permuted(perm),
            hyp,
            e: perm[self.e],
            rho: (0..n).map(|a| perm[self.rho[inv[a]]]).collect(),
        }
    }
}

// Compact JSON view used in reports; documents have their own format.
impl Serialize for LMosaic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            size: usize,
            e: usize,
            rho: &'a [usize],
            table: Vec<&'a [ElemSet]>,
        }
        Repr {
            size: self.size(),
            e: self.e(),
            rho: self.rho(),
            table: self.table().rows().collect(),
        }
        .serialize(s)
    }
}

/// Either structure kind, as read from a document.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Structure {
    BJoin(BJoinSemilattice),
    LMosaic(LMosaic),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::BJoin(_) => "bjoin",
            Structure::LMosaic(_) => "lmosaic",
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Structure::BJoin(s) => s.carrier(),
            Structure::LMosaic(m) => m.carrier(),
        }
    }

    pub fn size(&self) -> usize {
        self.carrier().size()
    }
}

impl From<BJoinSemilattice> for Structure {
    fn from(s: BJoinSemilattice) -> Self {
        Structure::BJoin(s)
    }
}

impl From<LMosaic> for Structure {
    fn from(m: LMosaic) -> Self {
        Structure::LMosaic(m)
    }
}
