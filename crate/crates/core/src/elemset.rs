//! Word-sized subsets of a carrier.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported carrier; one bit per element in a `u64`.
pub const MAX_CARRIER: usize = 64;

/// A subset of `{0, .., 63}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(x: usize) -> Self {
        debug_assert!(x < MAX_CARRIER);
        ElemSet(1 << x)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_CARRIER && (self.0 >> x) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < MAX_CARRIER);
        self.0 |= 1 << x;
    }

    pub fn remove(&mut self, x: usize) {
        debug_assert!(x < MAX_CARRIER);
        self.0 &= !(1 << x);
    }

    pub fn with(mut self, x: usize) -> Self {
        self.insert(x);
        self
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Image of the set under an element map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> ElemSet {
        self.iter().map(f).collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

// Sets go over the wire as ascending index lists.
impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        let mut s = ElemSet::EMPTY;
        for x in items {
            if x >= MAX_CARRIER {
                return Err(serde::de::Error::custom(format!(
                    "element {x} exceeds the {MAX_CARRIER}-element limit"
                )));
            }
            s.insert(x);
        }
        Ok(s)
    }
}

/// All nonempty subsets of `{0, .., n-1}`, ordered by cardinality and then
/// lexicographically by their ascending member lists.
pub fn nonempty_subsets(n: usize) -> Vec<ElemSet> {
    assert!(n < 32, "subset listing is only meant for tiny carriers");
    let mut all: Vec<ElemSet> = (1u64..(1u64 << n)).map(ElemSet).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: ElemSet = [0, 2, 5].into_iter().collect();
        let b: ElemSet = [2, 3].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(5) && !a.contains(1) && !a.contains(200));
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b), ElemSet::singleton(2));
        assert_eq!(a.difference(b).iter().collect::<Vec<_>>(), vec![0, 5]);
        assert!(ElemSet::singleton(2).is_subset(a));
        assert_eq!(a.first(), Some(0));
        assert_eq!(ElemSet::EMPTY.first(), None);
        assert_eq!(a.to_string(), "{0,2,5}");
    }

    #[test]
    fn full_sets() {
        assert_eq!(ElemSet::full(3).bits(), 0b111);
        assert_eq!(ElemSet::full(64).len(), 64);
        assert!(ElemSet::full(64).contains(63));
    }

    #[test]
    fn subset_order_is_cardinality_then_lex() {
        let order: Vec<String> = nonempty_subsets(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            order,
            ["{0}", "{1}", "{2}", "{0,1}", "{0,2}", "{1,2}", "{0,1,2}"]
        );
    }

    #[test]
    fn serde_as_sorted_list() {
        let s: ElemSet = [3, 1].into_iter().collect();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        let back: ElemSet = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<ElemSet>("[64]").is_err());
    }
}
