//! Exhaustive generation of structures up to isomorphism.
//!
//! Both enumerators emit one canonical representative per isomorphism
//! class (distinguished element at index 0), sorted by canonical form, so
//! output is identical across runs and thread counts.

mod bjoin;
pub mod canonical;
pub(crate) mod mosaic;

use std::collections::BTreeMap;

pub use canonical::{
    canonical_form, canonical_labeling, is_isomorphic, isomorphism, CanonicalForm, Canonize,
    IsoError,
};

use crate::error::BoundError;
use crate::structure::{BJoinSemilattice, LMosaic};
use mosaic::{involutions, Enforced, MosaicSearch};

pub const DEFAULT_BJOIN_BOUND: usize = 7;
pub const DEFAULT_LMOSAIC_BOUND: usize = 4;

/// Largest sizes the enumerators accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub bjoin: usize,
    pub lmosaic: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            bjoin: DEFAULT_BJOIN_BOUND,
            lmosaic: DEFAULT_LMOSAIC_BOUND,
        }
    }
}

impl Bounds {
    /// Same cap for both kinds.
    pub fn uniform(max: usize) -> Self {
        Bounds {
            bjoin: max,
            lmosaic: max,
        }
    }

    pub fn check_bjoin(&self, n: usize) -> Result<(), BoundError> {
        check(n, self.bjoin)
    }

    pub fn check_lmosaic(&self, n: usize) -> Result<(), BoundError> {
        check(n, self.lmosaic)
    }
}

fn check(n: usize, max: usize) -> Result<(), BoundError> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(BoundError::SizeOutOfBounds { n, max })
    }
}

/// Which reversibility maps the L-mosaic search considers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RhoMode {
    /// `ρ = id` only.
    #[default]
    Identity,
    /// Every involution of the carrier.
    Involutions,
}

impl RhoMode {
    pub(crate) fn maps(self, n: usize) -> Vec<Vec<usize>> {
        match self {
            RhoMode::Identity => vec![(0..n).collect()],
            RhoMode::Involutions => involutions(n),
        }
    }
}

/// One bounded join-semilattice of size `n` per isomorphism class.
pub fn enumerate_bjoin(n: usize, bounds: &Bounds) -> Result<Vec<BJoinSemilattice>, BoundError> {
    bounds.check_bjoin(n)?;
    Ok(bjoin::enumerate(n))
}

/// One L-mosaic of size `n` per isomorphism class (weak neutrality).
pub fn enumerate_lmosaic(
    n: usize,
    bounds: &Bounds,
    rho: RhoMode,
) -> Result<Vec<LMosaic>, BoundError> {
    bounds.check_lmosaic(n)?;
    Ok(dedup(rho.maps(n).into_iter().flat_map(|r| {
        MosaicSearch::new(n, r, Enforced::ALL).all()
    })))
}

/// Canonical representatives of the distinct classes in `items`, sorted by
/// canonical form.
pub(crate) fn dedup<T: Canonize>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut classes = BTreeMap::new();
    for s in items {
        let (form, perm) = canonical_labeling(&s);
        classes.entry(form).or_insert_with(|| s.relabeled(&perm));
    }
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_enforced() {
        let b = Bounds::default();
        assert!(enumerate_bjoin(0, &b).is_err());
        assert_eq!(
            enumerate_bjoin(8, &b).unwrap_err(),
            BoundError::SizeOutOfBounds { n: 8, max: 7 }
        );
        assert!(enumerate_lmosaic(5, &b, RhoMode::Identity).is_err());
    }
}
