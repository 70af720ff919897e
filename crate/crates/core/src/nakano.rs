//! Forward construction: a bounded join-semilattice becomes an L-mosaic with
//! `x ⊕ y = { z : x∨y = x∨z = z∨y }`, `e = ⊥` and `ρ = id`.

use crate::axioms::check_bjoin;
use crate::elemset::ElemSet;
use crate::error::ConstructionError;
use crate::structure::{BinOpTable, HyperOpTable, LMosaic};
use crate::BJoinSemilattice;

/// Build the Nakano L-mosaic of `s`. Refuses tables that fail
/// [`check_bjoin`].
pub fn nakano(s: &BJoinSemilattice) -> Result<LMosaic, ConstructionError> {
    let report = check_bjoin(s);
    if !report.all_pass() {
        return Err(ConstructionError::NotASemilattice(report));
    }
    Ok(nakano_unchecked(s.table(), s.bot()).with_carrier(s.carrier().clone()))
}

/// Nakano cells of an arbitrary join table, row-major. A cell can be empty
/// when the table is not a semilattice.
pub(crate) fn nakano_cells(join: &BinOpTable) -> Vec<ElemSet> {
    let n = join.size();
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let xy = join.get(x, y);
            cells.push(
                (0..n)
                    .filter(|&z| join.get(x, z) == xy && join.get(z, y) == xy)
                    .collect(),
            );
        }
    }
    cells
}

fn nakano_unchecked(join: &BinOpTable, bot: usize) -> LMosaic {
    let n = join.size();
    let hyp =
        HyperOpTable::new(n, nakano_cells(join)).expect("x∨y lies in x⊕y for any semilattice");
    LMosaic::from_parts_unlabeled(hyp, bot, (0..n).collect())
}
