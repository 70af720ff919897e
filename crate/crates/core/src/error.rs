use thiserror::Error;

use crate::axioms::CheckReport;
use crate::elemset::ElemSet;
use crate::structure::StructureError;

/// `lm4` failed at a pair, so no join can be read off.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractJoinError {
    #[error("index out of range: {0}")]
    Index(#[from] StructureError),
    #[error("no element z in {x}⊕{y} with {x}, {y} ∈ z⊕z")]
    ZeroWitnesses { x: usize, y: usize },
    #[error("several elements {candidates} in {x}⊕{y} qualify as the join")]
    MultipleWitnesses {
        x: usize,
        y: usize,
        candidates: ElemSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("input is not a bounded join-semilattice:\n{0}")]
    NotASemilattice(CheckReport),
    #[error("input is not an L-mosaic:\n{0}")]
    NotAnLMosaic(CheckReport),
    #[error(transparent)]
    Extract(#[from] ExtractJoinError),
    /// The extracted join table failed `check_bjoin`. Never expected on a
    /// valid L-mosaic.
    #[error("extracted join table is not a bounded join-semilattice:\n{0}")]
    Postcondition(CheckReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("size {n} outside the supported range 1..={max}")]
    SizeOutOfBounds { n: usize, max: usize },
}
