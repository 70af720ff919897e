//! Axiom necessity: structures satisfying every L-mosaic axiom but one, and
//! the downstream properties that then break.
//!
//! The base mosaic axioms use weak neutrality and are never dropped; only
//! `comm`, `lm1_e`, `lm1_id`, `lm2`, `lm3`, `lm4` and `reversibility` can be.
//! The search is the L-mosaic enumerator with `ρ = id`, the dropped axiom's
//! propagation switched off, and a filter keeping only structures where the
//! dropped axiom really fails.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::axioms::{lm4_candidates, MosaicAxiom, UnknownAxiomName, Witness};
use crate::elemset::ElemSet;
use crate::enumeration::mosaic::{Enforced, MosaicSearch};
use crate::enumeration::{dedup, Bounds};
use crate::error::BoundError;
use crate::extraction::{induced_order, join_cells, lub_report, LubAxiom, OrderAxiom};
use crate::nakano::nakano_cells;
use crate::structure::{BinOpTable, LMosaic};

pub const ABLATABLE: [MosaicAxiom; 7] = [
    MosaicAxiom::Comm,
    MosaicAxiom::Lm1E,
    MosaicAxiom::Lm1Id,
    MosaicAxiom::Lm2,
    MosaicAxiom::Lm3,
    MosaicAxiom::Lm4,
    MosaicAxiom::Reversibility,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AblationError {
    #[error(transparent)]
    UnknownAxiom(#[from] UnknownAxiomName),
    #[error("axiom {0} cannot be dropped; choose one of comm, lm1_e, lm1_id, lm2, lm3, lm4, reversibility")]
    NotAblatable(MosaicAxiom),
    #[error(transparent)]
    Bound(#[from] BoundError),
    /// Dropping lm4 left both join definedness and leastness intact.
    #[error("structure without lm4 keeps a total, least join:\n{0:?}")]
    Lm4WithoutConsequence(Box<LMosaic>),
}

/// Parse an ablatable axiom name.
pub fn parse_axiom(name: &str) -> Result<MosaicAxiom, AblationError> {
    let ax: MosaicAxiom = name.parse()?;
    if ABLATABLE.contains(&ax) {
        Ok(ax)
    } else {
        Err(AblationError::NotAblatable(ax))
    }
}

/// Downstream properties that can break once an axiom is dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    OrderReflexivity,
    OrderAntisymmetry,
    OrderTransitivity,
    ExtractJoinDefinedness,
    LubUbLeft,
    LubUbRight,
    LubLeast,
    RoundtripIdentity,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::OrderReflexivity => "order_reflexivity",
            Property::OrderAntisymmetry => "order_antisymmetry",
            Property::OrderTransitivity => "order_transitivity",
            Property::ExtractJoinDefinedness => "extract_join_definedness",
            Property::LubUbLeft => "lub_ub_left",
            Property::LubUbRight => "lub_ub_right",
            Property::LubLeast => "lub_least",
            Property::RoundtripIdentity => "roundtrip_identity",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrokenProperty {
    pub property: Property,
    pub witness: Witness,
}

impl BrokenProperty {
    /// Re-evaluate the property at the witness; `true` when it still fails.
    pub fn replays(&self, m: &LMosaic) -> bool {
        let w = &self.witness;
        let order = induced_order(m);
        let elem = |i| w.elem(i).filter(|&x| x < m.size());
        match self.property {
            Property::OrderReflexivity => !OrderAxiom::Reflexive.holds_at(&order, w),
            Property::OrderAntisymmetry => !OrderAxiom::Antisymmetric.holds_at(&order, w),
            Property::OrderTransitivity => !OrderAxiom::Transitive.holds_at(&order, w),
            Property::ExtractJoinDefinedness => match (elem(0), elem(1)) {
                (Some(x), Some(y)) => lm4_candidates(m, x, y).len() != 1,
                _ => false,
            },
            Property::LubUbLeft => !LubAxiom::UbLeft.holds_at(m, w),
            Property::LubUbRight => !LubAxiom::UbRight.holds_at(m, w),
            Property::LubLeast => !LubAxiom::Least.holds_at(m, w),
            Property::RoundtripIdentity => {
                let (x, y) = match (elem(0), elem(1)) {
                    (Some(x), Some(y)) => (x, y),
                    (Some(x), None) => return m.rho()[x] != x,
                    _ => return false,
                };
                match roundtrip_cells(m) {
                    Err((a, b)) => (a, b) == (x, y),
                    Ok(cells) => cells[x * m.size() + y] != m.hyper(x, y),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AblationResult {
    pub dropped: MosaicAxiom,
    pub structure: LMosaic,
    pub broken: Vec<BrokenProperty>,
}

impl AblationResult {
    pub fn breaks(&self, p: Property) -> bool {
        self.broken.iter().any(|b| b.property == p)
    }
}

/// Nakano cells of the extracted join table, or the first pair whose join
/// is undefined.
fn roundtrip_cells(m: &LMosaic) -> Result<Vec<ElemSet>, (usize, usize)> {
    let n = m.size();
    let joins = join_cells(m);
    if let Some(i) = joins.iter().position(Result::is_err) {
        return Err((i / n, i % n));
    }
    let table = BinOpTable::new(n, joins.into_iter().map(Result::unwrap).collect())
        .expect("joins lie in the carrier");
    Ok(nakano_cells(&table))
}

/// Evaluate every downstream property on `m` and list those that fail.
pub fn broken_properties(m: &LMosaic) -> Vec<BrokenProperty> {
    let n = m.size();
    let mut out = Vec::new();
    let mut push = |property, witness: Option<Witness>| {
        if let Some(witness) = witness {
            out.push(BrokenProperty { property, witness });
        }
    };
    let order = induced_order(m);
    push(
        Property::OrderReflexivity,
        OrderAxiom::Reflexive.first_violation(&order),
    );
    push(
        Property::OrderAntisymmetry,
        OrderAxiom::Antisymmetric.first_violation(&order),
    );
    push(
        Property::OrderTransitivity,
        OrderAxiom::Transitive.first_violation(&order),
    );

    let joins = join_cells(m);
    let undefined = joins.iter().position(Result::is_err).map(|i| {
        let (x, y) = (i / n, i % n);
        Witness::elems(&[x, y]).with_set(lm4_candidates(m, x, y))
    });
    push(Property::ExtractJoinDefinedness, undefined);

    let partial: Vec<Option<usize>> = joins.iter().map(|r| r.as_ref().ok().copied()).collect();
    let lub = lub_report(&order, &partial);
    for (p, name) in [
        (Property::LubUbLeft, "ub_left"),
        (Property::LubUbRight, "ub_right"),
        (Property::LubLeast, "least"),
    ] {
        push(p, lub.get(name).and_then(|v| v.witness.clone()));
    }

    let roundtrip = match roundtrip_cells(m) {
        Err((x, y)) => Some(Witness::elems(&[x, y])),
        Ok(cells) => (0..n * n)
            .find(|&i| cells[i] != m.hyper(i / n, i % n))
            .map(|i| Witness::elems(&[i / n, i % n]).with_set(cells[i]))
            .or_else(|| {
                (0..n)
                    .find(|&x| m.rho()[x] != x)
                    .map(|x| Witness::elems(&[x]))
            }),
    };
    push(Property::RoundtripIdentity, roundtrip);
    out
}

fn result_for(dropped: MosaicAxiom, m: LMosaic) -> Result<AblationResult, AblationError> {
    let broken = broken_properties(&m);
    let r = AblationResult {
        dropped,
        structure: m,
        broken,
    };
    if dropped == MosaicAxiom::Lm4
        && !r.breaks(Property::ExtractJoinDefinedness)
        && !r.breaks(Property::LubLeast)
    {
        return Err(AblationError::Lm4WithoutConsequence(Box::new(r.structure)));
    }
    Ok(r)
}

fn search(n: usize, dropped: MosaicAxiom, bounds: &Bounds) -> Result<MosaicSearch, AblationError> {
    bounds.check_lmosaic(n)?;
    let enforced = Enforced::without(dropped)
        .filter(|_| ABLATABLE.contains(&dropped))
        .ok_or(AblationError::NotAblatable(dropped))?;
    Ok(MosaicSearch::new(n, (0..n).collect(), enforced))
}

/// The first structure of size `n`, in search order, that satisfies every
/// L-mosaic axiom except `dropped` and violates `dropped`.
pub fn ablate(
    n: usize,
    dropped: MosaicAxiom,
    bounds: &Bounds,
) -> Result<Option<AblationResult>, AblationError> {
    let search = search(n, dropped, bounds)?;
    let mut found = None;
    search.run(&mut |m| {
        if dropped.holds(&m) {
            ControlFlow::Continue(())
        } else {
            found = Some(m);
            ControlFlow::Break(())
        }
    });
    found.map(|m| result_for(dropped, m)).transpose()
}

/// Every such structure up to isomorphism, sorted by canonical form.
pub fn ablate_all(
    n: usize,
    dropped: MosaicAxiom,
    bounds: &Bounds,
) -> Result<Vec<AblationResult>, AblationError> {
    let search = search(n, dropped, bounds)?;
    let violators = search.all().into_iter().filter(|m| !dropped.holds(m));
    dedup(violators)
        .into_iter()
        .map(|m| result_for(dropped, m))
        .collect()
}
