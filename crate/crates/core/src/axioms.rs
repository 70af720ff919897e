//! Per-axiom decision procedures for bounded join-semilattices and
//! L-mosaics.
//!
//! Every check is a brute-force scan in lexicographic tuple order, so the
//! witness attached to a failed verdict is the first failing tuple. Each
//! axiom can also be replayed at a witness with [`JoinAxiom::holds_at`] or
//! [`MosaicAxiom::holds_at`].
//!
//! The base mosaic axioms are not spelled out alongside the L-mosaic ones,
//! so two forms are fixed here:
//!
//! * neutrality: weak (`x ∈ e⊕x` and `x ∈ x⊕e`) or strict
//!   (`e⊕x = {x} = x⊕e`);
//! * reversibility: `z ∈ x⊕y` implies `x ∈ z⊕ρ(y)` and `y ∈ ρ(x)⊕z`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::elemset::ElemSet;
use crate::structure::{BJoinSemilattice, LMosaic};

/// One coordinate of a witness tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessPart {
    Elem(usize),
    Set(ElemSet),
}

/// A tuple falsifying an axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Witness(pub Vec<WitnessPart>);

impl Witness {
    pub fn elems(xs: &[usize]) -> Self {
        Witness(xs.iter().map(|&x| WitnessPart::Elem(x)).collect())
    }

    pub fn with_set(mut self, s: ElemSet) -> Self {
        self.0.push(WitnessPart::Set(s));
        self
    }

    pub fn elem(&self, i: usize) -> Option<usize> {
        match self.0.get(i) {
            Some(WitnessPart::Elem(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn set(&self, i: usize) -> Option<ElemSet> {
        match self.0.get(i) {
            Some(WitnessPart::Set(s)) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match p {
                WitnessPart::Elem(x) => write!(f, "{x}")?,
                WitnessPart::Set(s) => write!(f, "{s}")?,
            }
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub axiom: &'static str,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn new(axiom: &'static str, witness: Option<Witness>) -> Self {
        Verdict { axiom, witness }
    }

    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            axiom: &'a str,
            pass: bool,
            witness: &'a Option<Witness>,
        }
        Repr {
            axiom: self.axiom,
            pass: self.pass(),
            witness: &self.witness,
        }
        .serialize(serializer)
    }
}

/// Ordered verdict list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdicts: Vec<Verdict>,
}

impl CheckReport {
    pub fn push(&mut self, axiom: &'static str, witness: Option<Witness>) {
        self.verdicts.push(Verdict::new(axiom, witness));
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(Verdict::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass())
    }

    pub fn get(&self, axiom: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.verdicts.iter().map(|v| v.axiom).collect()
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.verdicts.extend(other.verdicts);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .verdicts
            .iter()
            .map(|v| v.axiom.len())
            .max()
            .unwrap_or(0);
        for v in &self.verdicts {
            match &v.witness {
                None => writeln!(f, "{:width$}  pass", v.axiom)?,
                Some(w) => writeln!(f, "{:width$}  FAIL  witness {w}", v.axiom)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom {0:?}")]
pub struct UnknownAxiomName(pub String);

// ---------------------------------------------------------------------------
// Bounded join-semilattices

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JoinAxiom {
    Closed,
    Assoc,
    Comm,
    Idem,
    BotIn,
    BotLeft,
    BotRight,
}

impl JoinAxiom {
    pub const ALL: [JoinAxiom; 7] = [
        JoinAxiom::Closed,
        JoinAxiom::Assoc,
        JoinAxiom::Comm,
        JoinAxiom::Idem,
        JoinAxiom::BotIn,
        JoinAxiom::BotLeft,
        JoinAxiom::BotRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JoinAxiom::Closed => "closed",
            JoinAxiom::Assoc => "assoc",
            JoinAxiom::Comm => "comm",
            JoinAxiom::Idem => "idem",
            JoinAxiom::BotIn => "bot_in",
            JoinAxiom::BotLeft => "bot_left",
            JoinAxiom::BotRight => "bot_right",
        }
    }

    fn arity(self) -> usize {
        match self {
            JoinAxiom::Assoc => 3,
            JoinAxiom::Closed | JoinAxiom::Comm => 2,
            JoinAxiom::Idem | JoinAxiom::BotLeft | JoinAxiom::BotRight => 1,
            JoinAxiom::BotIn => 0,
        }
    }

    /// Evaluate the axiom instance at the given elements.
    fn instance(self, s: &BJoinSemilattice, t: &[usize]) -> bool {
        let n = s.size();
        let j = |a, b| s.table().get(a, b);
        match self {
            JoinAxiom::Closed => j(t[0], t[1]) < n,
            JoinAxiom::Assoc => j(j(t[0], t[1]), t[2]) == j(t[0], j(t[1], t[2])),
            JoinAxiom::Comm => j(t[0], t[1]) == j(t[1], t[0]),
            JoinAxiom::Idem => j(t[0], t[0]) == t[0],
            JoinAxiom::BotIn => s.bot() < n,
            JoinAxiom::BotLeft => j(s.bot(), t[0]) == t[0],
            JoinAxiom::BotRight => j(t[0], s.bot()) == t[0],
        }
    }

    pub fn first_violation(self, s: &BJoinSemilattice) -> Option<Witness> {
        if self == JoinAxiom::BotIn {
            // bot is range-checked at construction
            return (!self.instance(s, &[])).then(|| Witness::elems(&[s.bot()]));
        }
        tuples(s.size(), self.arity())
            .find(|t| !self.instance(s, t))
            .map(|t| Witness::elems(&t))
    }

    /// Does the axiom hold at this witness? `false` means the witness
    /// genuinely falsifies it.
    pub fn holds_at(self, s: &BJoinSemilattice, w: &Witness) -> bool {
        if self == JoinAxiom::BotIn {
            return self.instance(s, &[]);
        }
        let t: Option<Vec<usize>> = (0..self.arity()).map(|i| w.elem(i)).collect();
        match t {
            Some(t) if t.iter().all(|&x| x < s.size()) => self.instance(s, &t),
            _ => true,
        }
    }
}

impl FromStr for JoinAxiom {
    type Err = UnknownAxiomName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        JoinAxiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAxiomName(s.to_string()))
    }
}

/// All `arity`-tuples over `0..n` in lexicographic order.
pub(crate) fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        t
    })
}

/// Verdicts for all seven semilattice axioms, in a fixed order.
pub fn check_bjoin(s: &BJoinSemilattice) -> CheckReport {
    let mut r = CheckReport::default();
    for ax in JoinAxiom::ALL {
        r.push(ax.name(), ax.first_violation(s));
    }
    r
}

// ---------------------------------------------------------------------------
// Mosaics and L-mosaics

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MosaicAxiom {
    Nonempty,
    Neutral,
    NeutralStrict,
    Reversibility,
    Comm,
    Lm1E,
    Lm1Id,
    Lm2,
    Lm3,
    Lm4,
}

impl MosaicAxiom {
    pub const ALL: [MosaicAxiom; 10] = [
        MosaicAxiom::Nonempty,
        MosaicAxiom::Neutral,
        MosaicAxiom::NeutralStrict,
        MosaicAxiom::Reversibility,
        MosaicAxiom::Comm,
        MosaicAxiom::Lm1E,
        MosaicAxiom::Lm1Id,
        MosaicAxiom::Lm2,
        MosaicAxiom::Lm3,
        MosaicAxiom::Lm4,
    ];

    /// The L-mosaic-specific axioms layered over the base mosaic.
    pub const LOCAL: [MosaicAxiom; 6] = [
        MosaicAxiom::Comm,
        MosaicAxiom::Lm1E,
        MosaicAxiom::Lm1Id,
        MosaicAxiom::Lm2,
        MosaicAxiom::Lm3,
        MosaicAxiom::Lm4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MosaicAxiom::Nonempty => "nonempty",
            MosaicAxiom::Neutral => "neutral",
            MosaicAxiom::NeutralStrict => "neutral_strict",
            MosaicAxiom::Reversibility => "reversibility",
            MosaicAxiom::Comm => "comm",
            MosaicAxiom::Lm1E => "lm1_e",
            MosaicAxiom::Lm1Id => "lm1_id",
            MosaicAxiom::Lm2 => "lm2",
            MosaicAxiom::Lm3 => "lm3",
            MosaicAxiom::Lm4 => "lm4",
        }
    }

    fn arity(self) -> usize {
        match self {
            MosaicAxiom::Reversibility => 3,
            MosaicAxiom::Nonempty | MosaicAxiom::Comm | MosaicAxiom::Lm3 | MosaicAxiom::Lm4 => 2,
            _ => 1,
        }
    }

    /// Evaluate at an element tuple. `Err` carries the set-valued part of
    /// the witness for axioms that have one.
    fn instance(self, m: &LMosaic, t: &[usize]) -> Result<(), Option<ElemSet>> {
        let h = |a, b| m.table().get(a, b);
        let ok = |b: bool| if b { Ok(()) } else { Err(None) };
        let e = m.e();
        match self {
            MosaicAxiom::Nonempty => ok(!h(t[0], t[1]).is_empty()),
            MosaicAxiom::Neutral => {
                let x = t[0];
                ok(h(e, x).contains(x) && h(x, e).contains(x))
            }
            MosaicAxiom::NeutralStrict => {
                let x = t[0];
                let single = ElemSet::singleton(x);
                ok(h(e, x) == single && h(x, e) == single)
            }
            MosaicAxiom::Reversibility => {
                let (x, y, z) = (t[0], t[1], t[2]);
                let rho = m.rho();
                ok(!h(x, y).contains(z) || (h(z, rho[y]).contains(x) && h(rho[x], z).contains(y)))
            }
            MosaicAxiom::Comm => ok(h(t[0], t[1]) == h(t[1], t[0])),
            MosaicAxiom::Lm1E => ok(h(t[0], t[0]).contains(e)),
            MosaicAxiom::Lm1Id => ok(h(t[0], t[0]).contains(t[0])),
            MosaicAxiom::Lm2 => {
                let d = h(t[0], t[0]);
                let sq = m.set_mul(d, d);
                if sq == d {
                    Ok(())
                } else {
                    Err(Some(sq))
                }
            }
            MosaicAxiom::Lm3 => {
                let (x, y) = (t[0], t[1]);
                let s = h(x, y);
                let extra = m
                    .right_mul(x, s)
                    .intersection(m.left_mul(s, y))
                    .difference(s);
                if extra.is_empty() {
                    Ok(())
                } else {
                    Err(Some(extra))
                }
            }
            MosaicAxiom::Lm4 => {
                let w = lm4_candidates(m, t[0], t[1]);
                if w.len() == 1 {
                    Ok(())
                } else {
                    Err(Some(w))
                }
            }
        }
    }

    pub fn first_violation(self, m: &LMosaic) -> Option<Witness> {
        tuples(m.size(), self.arity()).find_map(|t| match self.instance(m, &t) {
            Ok(()) => None,
            Err(None) => Some(Witness::elems(&t)),
            Err(Some(s)) => Some(Witness::elems(&t).with_set(s)),
        })
    }

    pub fn holds(self, m: &LMosaic) -> bool {
        self.first_violation(m).is_none()
    }

    /// Does the axiom hold at this witness? A witness whose recorded set
    /// disagrees with a fresh evaluation counts as not replaying.
    pub fn holds_at(self, m: &LMosaic, w: &Witness) -> bool {
        let t: Option<Vec<usize>> = (0..self.arity()).map(|i| w.elem(i)).collect();
        let Some(t) = t.filter(|t| t.iter().all(|&x| x < m.size())) else {
            return true;
        };
        match self.instance(m, &t) {
            Ok(()) => true,
            Err(recorded) => recorded != w.set(self.arity()),
        }
    }
}

impl fmt::Display for MosaicAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for MosaicAxiom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for MosaicAxiom {
    type Err = UnknownAxiomName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MosaicAxiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAxiomName(s.to_string()))
    }
}

/// `{ z ∈ x⊕y : x ∈ z⊕z ∧ y ∈ z⊕z }`, ascending. `lm4` asks for exactly one.
pub fn lm4_candidates(m: &LMosaic, x: usize, y: usize) -> ElemSet {
    m.hyper(x, y)
        .iter()
        .filter(|&z| {
            let d = m.hyper(z, z);
            d.contains(x) && d.contains(y)
        })
        .collect()
}

fn neutral_axiom(strict: bool) -> MosaicAxiom {
    if strict {
        MosaicAxiom::NeutralStrict
    } else {
        MosaicAxiom::Neutral
    }
}

/// Base mosaic axioms in the given neutrality mode.
pub fn mosaic_axioms(strict_neutral: bool) -> [MosaicAxiom; 3] {
    [
        MosaicAxiom::Nonempty,
        neutral_axiom(strict_neutral),
        MosaicAxiom::Reversibility,
    ]
}

/// Base mosaic followed by the six L-mosaic axioms.
pub fn lmosaic_axioms(strict_neutral: bool) -> Vec<MosaicAxiom> {
    let mut v = mosaic_axioms(strict_neutral).to_vec();
    v.extend(MosaicAxiom::LOCAL);
    v
}

fn report(m: &LMosaic, axioms: &[MosaicAxiom]) -> CheckReport {
    let mut r = CheckReport::default();
    for &ax in axioms {
        r.push(ax.name(), ax.first_violation(m));
    }
    r
}

/// Verdicts for nonemptiness, neutrality and reversibility.
pub fn check_mosaic(m: &LMosaic, strict_neutral: bool) -> CheckReport {
    report(m, &mosaic_axioms(strict_neutral))
}

/// [`check_mosaic`] followed by comm, lm1_e, lm1_id, lm2, lm3, lm4.
pub fn check_lmosaic(m: &LMosaic, strict_neutral: bool) -> CheckReport {
    report(m, &lmosaic_axioms(strict_neutral))
}
