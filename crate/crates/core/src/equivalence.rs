//! Round trips between the two constructions, single and family-wide.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::axioms::check_lmosaic;
use crate::elemset::ElemSet;
use crate::enumeration::{enumerate_bjoin, enumerate_lmosaic, Bounds, Canonize, RhoMode};
use crate::error::{BoundError, ConstructionError};
use crate::extraction::extract_bjoin;
use crate::nakano::nakano;
use crate::structure::{BJoinSemilattice, LMosaic};

/// One cell or constant that changed across a round trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum Mismatch {
    Join {
        x: usize,
        y: usize,
        expected: usize,
        actual: usize,
    },
    Hyper {
        x: usize,
        y: usize,
        expected: ElemSet,
        actual: ElemSet,
    },
    Bot {
        expected: usize,
        actual: usize,
    },
    E {
        expected: usize,
        actual: usize,
    },
    Rho {
        x: usize,
        expected: usize,
        actual: usize,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Join {
                x,
                y,
                expected,
                actual,
            } => {
                write!(f, "join({x},{y}): expected {expected}, got {actual}")
            }
            Mismatch::Hyper {
                x,
                y,
                expected,
                actual,
            } => {
                write!(f, "hyper({x},{y}): expected {expected}, got {actual}")
            }
            Mismatch::Bot { expected, actual } => {
                write!(f, "bot: expected {expected}, got {actual}")
            }
            Mismatch::E { expected, actual } => write!(f, "e: expected {expected}, got {actual}"),
            Mismatch::Rho {
                x,
                expected,
                actual,
            } => {
                write!(f, "rho({x}): expected {expected}, got {actual}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffKind {
    Identical,
    Differs,
}

/// Cell-level comparison of a structure with its round-tripped image.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureDiff {
    pub details: Vec<Mismatch>,
}

impl StructureDiff {
    pub fn kind(&self) -> DiffKind {
        if self.details.is_empty() {
            DiffKind::Identical
        } else {
            DiffKind::Differs
        }
    }

    pub fn is_identical(&self) -> bool {
        self.details.is_empty()
    }
}

impl Serialize for StructureDiff {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: DiffKind,
            details: &'a [Mismatch],
        }
        Repr {
            kind: self.kind(),
            details: &self.details,
        }
        .serialize(serializer)
    }
}

impl fmt::Display for StructureDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identical() {
            return writeln!(f, "identical");
        }
        writeln!(f, "differs ({} mismatches)", self.details.len())?;
        for m in &self.details {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

pub fn diff_bjoin(expected: &BJoinSemilattice, actual: &BJoinSemilattice) -> StructureDiff {
    let mut details = Vec::new();
    let n = expected.size();
    for x in 0..n {
        for y in 0..n {
            let (e, a) = (expected.join(x, y), actual.join(x, y));
            if e != a {
                details.push(Mismatch::Join {
                    x,
                    y,
                    expected: e,
                    actual: a,
                });
            }
        }
    }
    if expected.bot() != actual.bot() {
        details.push(Mismatch::Bot {
            expected: expected.bot(),
            actual: actual.bot(),
        });
    }
    StructureDiff { details }
}

pub fn diff_lmosaic(expected: &LMosaic, actual: &LMosaic) -> StructureDiff {
    let mut details = Vec::new();
    let n = expected.size();
    for x in 0..n {
        for y in 0..n {
            let (e, a) = (expected.hyper(x, y), actual.hyper(x, y));
            if e != a {
                details.push(Mismatch::Hyper {
                    x,
                    y,
                    expected: e,
                    actual: a,
                });
            }
        }
    }
    if expected.e() != actual.e() {
        details.push(Mismatch::E {
            expected: expected.e(),
            actual: actual.e(),
        });
    }
    for x in 0..n {
        let (e, a) = (expected.rho()[x], actual.rho()[x]);
        if e != a {
            details.push(Mismatch::Rho {
                x,
                expected: e,
                actual: a,
            });
        }
    }
    StructureDiff { details }
}

/// Compare `extract_bjoin(nakano(s))` with `s` on the same indices.
pub fn roundtrip_bjoin(s: &BJoinSemilattice) -> Result<StructureDiff, ConstructionError> {
    let back = extract_bjoin(&nakano(s)?)?;
    Ok(diff_bjoin(s, &back))
}

/// Compare `nakano(extract_bjoin(m))` with `m` on the same indices.
pub fn roundtrip_lmosaic(m: &LMosaic) -> Result<StructureDiff, ConstructionError> {
    let back = nakano(&extract_bjoin(m)?)?;
    Ok(diff_lmosaic(m, &back))
}

/// First triple (lexicographic) where `(x⊕y)⊕z ≠ x⊕(y⊕z)` for the
/// set-lifted operation.
pub fn hyper_assoc_witness(m: &LMosaic) -> Option<(usize, usize, usize)> {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            let xy = m.hyper(x, y);
            for z in 0..n {
                let left = m.left_mul(xy, z);
                let right = m.right_mul(x, m.hyper(y, z));
                if left != right {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// A located non-associativity instance among enumerated Nakano
/// structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocWitness {
    pub size: usize,
    /// Position of the semilattice in `enumerate_bjoin(size)`.
    pub index: usize,
    #[serde(skip)]
    pub semilattice: BJoinSemilattice,
    pub triple: (usize, usize, usize),
    pub left: ElemSet,
    pub right: ElemSet,
}

/// Scan Nakano structures of sizes `1..=max_n`, in enumeration order, for
/// the first failure of set-lifted associativity.
pub fn assoc_scan(max_n: usize, bounds: &Bounds) -> Result<Option<AssocWitness>, BoundError> {
    bounds.check_bjoin(max_n)?;
    for size in 1..=max_n {
        for (index, s) in enumerate_bjoin(size, bounds)?.into_iter().enumerate() {
            let m = nakano(&s).expect("enumerated structures are semilattices");
            if let Some((x, y, z)) = hyper_assoc_witness(&m) {
                return Ok(Some(AssocWitness {
                    size,
                    index,
                    triple: (x, y, z),
                    left: m.left_mul(m.hyper(x, y), z),
                    right: m.right_mul(x, m.hyper(y, z)),
                    semilattice: s,
                }));
            }
        }
    }
    Ok(None)
}

/// A structure in an enumerated family that failed one of the checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyFailure {
    pub kind: &'static str,
    pub index: usize,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySummary {
    pub size: usize,
    pub semilattices: usize,
    pub nakano_valid: usize,
    pub bjoin_roundtrips: usize,
    /// `None` when `size` exceeds the L-mosaic enumeration bound.
    pub lmosaics: Option<usize>,
    pub extraction_valid: Option<usize>,
    pub lmosaic_roundtrips: Option<usize>,
    /// Whether Nakano images and enumerated L-mosaics give the same set of
    /// isomorphism classes, with no two semilattices sharing an image.
    pub classes_match: Option<bool>,
    pub failures: Vec<FamilyFailure>,
}

impl FamilySummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.classes_match != Some(false)
    }
}

impl fmt::Display for FamilySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size {}", self.size)?;
        writeln!(
            f,
            "  semilattices: {} tested, {} Nakano images valid, {} round trips identical",
            self.semilattices, self.nakano_valid, self.bjoin_roundtrips
        )?;
        match (
            self.lmosaics,
            self.extraction_valid,
            self.lmosaic_roundtrips,
        ) {
            (Some(m), Some(v), Some(r)) => writeln!(
                f,
                "  L-mosaics: {m} tested, {v} extractions valid, {r} round trips identical"
            )?,
            _ => writeln!(f, "  L-mosaics: skipped (above enumeration bound)")?,
        }
        if let Some(c) = self.classes_match {
            writeln!(f, "  classes match: {c}")?;
        }
        writeln!(f, "  failures: {}", self.failures.len())?;
        for x in &self.failures {
            writeln!(f, "    {} #{} {}: {}", x.kind, x.index, x.check, x.detail)?;
        }
        Ok(())
    }
}

struct BjoinOutcome {
    nakano_valid: bool,
    roundtrip: bool,
    image: Option<LMosaic>,
    failures: Vec<FamilyFailure>,
}

fn check_semilattice(index: usize, s: &BJoinSemilattice) -> BjoinOutcome {
    let fail = |check, detail: String| FamilyFailure {
        kind: "bjoin",
        index,
        check,
        detail,
    };
    let mut failures = Vec::new();
    let image = match nakano(s) {
        Ok(m) => Some(m),
        Err(e) => {
            failures.push(fail("nakano", e.to_string()));
            None
        }
    };
    let nakano_valid = match &image {
        Some(m) => {
            let r = check_lmosaic(m, false);
            if !r.all_pass() {
                failures.push(fail("nakano_is_lmosaic", r.to_string()));
            }
            r.all_pass()
        }
        None => false,
    };
    let roundtrip = match roundtrip_bjoin(s) {
        Ok(d) if d.is_identical() => true,
        Ok(d) => {
            failures.push(fail("roundtrip_bjoin", d.to_string()));
            false
        }
        Err(e) => {
            failures.push(fail("roundtrip_bjoin", e.to_string()));
            false
        }
    };
    BjoinOutcome {
        nakano_valid,
        roundtrip,
        image,
        failures,
    }
}

fn check_mosaic_member(index: usize, m: &LMosaic) -> (bool, bool, Vec<FamilyFailure>) {
    let fail = |check, detail: String| FamilyFailure {
        kind: "lmosaic",
        index,
        check,
        detail,
    };
    let mut failures = Vec::new();
    let extracted = match extract_bjoin(m) {
        Ok(_) => true,
        Err(e) => {
            failures.push(fail("extract_bjoin", e.to_string()));
            false
        }
    };
    let roundtrip = match roundtrip_lmosaic(m) {
        Ok(d) if d.is_identical() => true,
        Ok(d) => {
            failures.push(fail("roundtrip_lmosaic", d.to_string()));
            false
        }
        Err(e) => {
            failures.push(fail("roundtrip_lmosaic", e.to_string()));
            false
        }
    };
    (extracted, roundtrip, failures)
}

/// Run both directions of the equivalence over every enumerated structure
/// of size `n`. The L-mosaic side is skipped above `bounds.lmosaic`.
pub fn verify_family(n: usize, bounds: &Bounds) -> Result<FamilySummary, BoundError> {
    let semilattices = enumerate_bjoin(n, bounds)?;
    let outcomes: Vec<BjoinOutcome> = semilattices
        .par_iter()
        .enumerate()
        .map(|(i, s)| check_semilattice(i, s))
        .collect();

    let mut summary = FamilySummary {
        size: n,
        semilattices: semilattices.len(),
        nakano_valid: outcomes.iter().filter(|o| o.nakano_valid).count(),
        bjoin_roundtrips: outcomes.iter().filter(|o| o.roundtrip).count(),
        lmosaics: None,
        extraction_valid: None,
        lmosaic_roundtrips: None,
        classes_match: None,
        failures: Vec::new(),
    };
    let images: Vec<LMosaic> = outcomes.iter().filter_map(|o| o.image.clone()).collect();
    for o in outcomes {
        summary.failures.extend(o.failures);
    }

    if bounds.check_lmosaic(n).is_ok() {
        let mosaics = enumerate_lmosaic(n, bounds, RhoMode::Identity)?;
        let results: Vec<_> = mosaics
            .par_iter()
            .enumerate()
            .map(|(i, m)| check_mosaic_member(i, m))
            .collect();
        summary.lmosaics = Some(mosaics.len());
        summary.extraction_valid = Some(results.iter().filter(|r| r.0).count());
        summary.lmosaic_roundtrips = Some(results.iter().filter(|r| r.1).count());
        for (_, _, f) in results {
            summary.failures.extend(f);
        }

        let image_forms: Vec<_> = images.iter().map(|m| m.canonical_form()).collect();
        let image_set: BTreeSet<_> = image_forms.iter().cloned().collect();
        let mosaic_set: BTreeSet<_> = mosaics.iter().map(|m| m.canonical_form()).collect();
        let injective = image_set.len() == image_forms.len() && images.len() == semilattices.len();
        summary.classes_match = Some(injective && image_set == mosaic_set);
    }
    Ok(summary)
}
