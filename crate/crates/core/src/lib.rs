//! Finite models of hypercompositional algebra.
//!
//! Bounded join-semilattices and L-mosaics are represented as explicit
//! operation tables over a carrier `{0, .., n-1}` (`n ≤ 64`). The crate
//! checks every axiom of both structures, converts between them in both
//! directions, enumerates all small structures up to isomorphism and uses
//! that to verify exhaustively that the two conversions are mutually
//! inverse.

pub mod ablation;
pub mod axioms;
pub mod elemset;
pub mod enumeration;
pub mod equivalence;
mod error;
pub mod extraction;
pub mod nakano;
pub mod structure;

pub use axioms::{
    check_bjoin, check_lmosaic, check_mosaic, CheckReport, Verdict, Witness, WitnessPart,
};
pub use elemset::ElemSet;
pub use error::{BoundError, ConstructionError, ExtractJoinError};
pub use extraction::{extract_bjoin, extract_join, induced_order, InducedOrder};
pub use nakano::nakano;
pub use structure::{
    BJoinSemilattice, BinOpTable, Carrier, HyperOpTable, LMosaic, Structure, StructureError,
};
