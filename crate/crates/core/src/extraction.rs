//! Reverse construction: read a bounded join-semilattice off an L-mosaic.
//!
//! The order is `x ⪯ y ⟺ x ∈ y⊕y` and the join of `x` and `y` is the
//! unique `z ∈ x⊕y` with `x, y ∈ z⊕z`. Every witness scan here runs on
//! the raw table, so these functions are safe on structures that break
//! the axioms; they report what fails instead of assuming anything.

use crate::axioms::{check_bjoin, check_lmosaic, lm4_candidates, tuples, CheckReport, Witness};
use crate::error::{ConstructionError, ExtractJoinError};
use crate::structure::{BinOpTable, LMosaic};
use crate::BJoinSemilattice;

/// A binary relation on `0..n`, read as `x ⪯ y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InducedOrder {
    n: usize,
    leq: Vec<bool>,
}

impl InducedOrder {
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let leq = (0..n * n).map(|i| leq(i / n, i % n)).collect();
        InducedOrder { n, leq }
    }

    /// The order of joins, `x ≤ y ⟺ x∨y = y`.
    pub fn of_semilattice(s: &BJoinSemilattice) -> Self {
        InducedOrder::from_fn(s.size(), |x, y| s.leq(x, y))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    /// Pairs `(x, y)` with `x ⪯ y`, `x ≠ y` and nothing strictly between,
    /// in lexicographic order. Meaningful once the relation is a partial
    /// order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// `x ⪯ y ⟺ x ∈ y⊕y`. No axioms are checked.
pub fn induced_order(m: &LMosaic) -> InducedOrder {
    InducedOrder::from_fn(m.size(), |x, y| m.hyper(y, y).contains(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderAxiom {
    Reflexive,
    Antisymmetric,
    Transitive,
}

impl OrderAxiom {
    pub const ALL: [OrderAxiom; 3] = [
        OrderAxiom::Reflexive,
        OrderAxiom::Antisymmetric,
        OrderAxiom::Transitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderAxiom::Reflexive => "reflexive",
            OrderAxiom::Antisymmetric => "antisymmetric",
            OrderAxiom::Transitive => "transitive",
        }
    }

    fn arity(self) -> usize {
        match self {
            OrderAxiom::Reflexive => 1,
            OrderAxiom::Antisymmetric => 2,
            OrderAxiom::Transitive => 3,
        }
    }

    fn instance(self, o: &InducedOrder, t: &[usize]) -> bool {
        match self {
            OrderAxiom::Reflexive => o.leq(t[0], t[0]),
            OrderAxiom::Antisymmetric => t[0] == t[1] || !(o.leq(t[0], t[1]) && o.leq(t[1], t[0])),
            OrderAxiom::Transitive => {
                !(o.leq(t[0], t[1]) && o.leq(t[1], t[2])) || o.leq(t[0], t[2])
            }
        }
    }

    pub fn first_violation(self, o: &InducedOrder) -> Option<Witness> {
        tuples(o.size(), self.arity())
            .find(|t| !self.instance(o, t))
            .map(|t| Witness::elems(&t))
    }

    pub fn holds_at(self, o: &InducedOrder, w: &Witness) -> bool {
        let t: Option<Vec<usize>> = (0..self.arity()).map(|i| w.elem(i)).collect();
        match t {
            Some(t) if t.iter().all(|&x| x < o.size()) => self.instance(o, &t),
            _ => true,
        }
    }
}

/// Reflexivity, antisymmetry and transitivity verdicts.
pub fn check_partial_order(o: &InducedOrder) -> CheckReport {
    let mut r = CheckReport::default();
    for ax in OrderAxiom::ALL {
        r.push(ax.name(), ax.first_violation(o));
    }
    r
}

/// The unique `z ∈ x⊕y` with `x, y ∈ z⊕z`.
pub fn extract_join(m: &LMosaic, x: usize, y: usize) -> Result<usize, ExtractJoinError> {
    m.checked_hyper(x, y)?;
    let candidates = lm4_candidates(m, x, y);
    match candidates.len() {
        0 => Err(ExtractJoinError::ZeroWitnesses { x, y }),
        1 => Ok(candidates.first().unwrap()),
        _ => Err(ExtractJoinError::MultipleWitnesses { x, y, candidates }),
    }
}

/// `extract_join` at every pair, row-major.
pub(crate) fn join_cells(m: &LMosaic) -> Vec<Result<usize, ExtractJoinError>> {
    let n = m.size();
    (0..n * n).map(|i| extract_join(m, i / n, i % n)).collect()
}

/// The semilattice `(A, ⊔, e)`. Refuses inputs failing [`check_lmosaic`]
/// and re-checks the result with [`check_bjoin`] before returning it.
pub fn extract_bjoin(m: &LMosaic) -> Result<BJoinSemilattice, ConstructionError> {
    let report = check_lmosaic(m, false);
    if !report.all_pass() {
        return Err(ConstructionError::NotAnLMosaic(report));
    }
    let cells = join_cells(m).into_iter().collect::<Result<Vec<_>, _>>()?;
    let table = BinOpTable::new(m.size(), cells).expect("joins lie in the carrier");
    let s = BJoinSemilattice::new(m.carrier().clone(), table, m.e()).expect("e in range");
    let post = check_bjoin(&s);
    if !post.all_pass() {
        return Err(ConstructionError::Postcondition(post));
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LubAxiom {
    UbLeft,
    UbRight,
    Least,
}

impl LubAxiom {
    pub const ALL: [LubAxiom; 3] = [LubAxiom::UbLeft, LubAxiom::UbRight, LubAxiom::Least];

    pub fn name(self) -> &'static str {
        match self {
            LubAxiom::UbLeft => "ub_left",
            LubAxiom::UbRight => "ub_right",
            LubAxiom::Least => "least",
        }
    }

    fn arity(self) -> usize {
        match self {
            LubAxiom::Least => 3,
            _ => 2,
        }
    }

    fn instance(self, o: &InducedOrder, join: usize, t: &[usize]) -> bool {
        match self {
            LubAxiom::UbLeft => o.leq(t[0], join),
            LubAxiom::UbRight => o.leq(t[1], join),
            LubAxiom::Least => !(o.leq(t[0], t[2]) && o.leq(t[1], t[2])) || o.leq(join, t[2]),
        }
    }

    /// First violation over the pairs where a join exists.
    pub(crate) fn first_violation_partial(
        self,
        o: &InducedOrder,
        joins: &[Option<usize>],
    ) -> Option<Witness> {
        let n = o.size();
        tuples(n, self.arity())
            .find(|t| match joins[t[0] * n + t[1]] {
                Some(j) => !self.instance(o, j, t),
                None => false,
            })
            .map(|t| Witness::elems(&t))
    }

    pub fn holds_at(self, m: &LMosaic, w: &Witness) -> bool {
        let t: Option<Vec<usize>> = (0..self.arity()).map(|i| w.elem(i)).collect();
        let Some(t) = t.filter(|t| t.iter().all(|&x| x < m.size())) else {
            return true;
        };
        match extract_join(m, t[0], t[1]) {
            Ok(j) => self.instance(&induced_order(m), j, &t),
            Err(_) => true,
        }
    }
}

pub(crate) fn lub_report(o: &InducedOrder, joins: &[Option<usize>]) -> CheckReport {
    let mut r = CheckReport::default();
    for ax in LubAxiom::ALL {
        r.push(ax.name(), ax.first_violation_partial(o, joins));
    }
    r
}

/// Upper-bound and leastness verdicts for `⊔` against `⪯`.
pub fn lub_properties(m: &LMosaic) -> Result<CheckReport, ExtractJoinError> {
    let joins = join_cells(m)
        .into_iter()
        .map(|r| r.map(Some))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(lub_report(&induced_order(m), &joins))
}
