//! Compact attribute subsets.
//!
//! Attribute subsets are the index sets the whole crate revolves around:
//! similarity relations, dependency measures and Choquet chains are all
//! functions of subsets of the conditional attributes. [`AttrSet`] encodes a
//! subset as a `u64` bitmask, which gives O(1) membership tests and cheap
//! sub-mask enumeration at the price of capping the arity at 64 attributes.

use std::fmt;

/// Maximum number of conditional attributes supported by [`AttrSet`].
pub const MAX_ATTRIBUTES: usize = 64;

/// A subset of conditional attributes, identified by indices into the
/// attribute list of a decision system.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttrSet(u64);

impl AttrSet {
    /// The empty subset.
    pub const EMPTY: AttrSet = AttrSet(0);

    /// The subset containing attributes `0..n`.
    ///
    /// Panics if `n` exceeds [`MAX_ATTRIBUTES`]; dataset loading enforces the
    /// cap, so in-crate callers always pass a valid arity.
    pub fn full(n: usize) -> AttrSet {
        assert!(
            n <= MAX_ATTRIBUTES,
            "attribute arity {n} exceeds the supported maximum of {MAX_ATTRIBUTES}"
        );
        if n == MAX_ATTRIBUTES {
            AttrSet(u64::MAX)
        } else {
            AttrSet((1u64 << n) - 1)
        }
    }

    /// The subset containing only attribute `i`.
    pub fn singleton(i: usize) -> AttrSet {
        assert!(i < MAX_ATTRIBUTES);
        AttrSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> AttrSet {
        let mut s = AttrSet::EMPTY;
        for i in indices {
            s = s.with(i);
        }
        s
    }

    pub fn from_bits(bits: u64) -> AttrSet {
        AttrSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Cardinality of the subset.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ATTRIBUTES && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> AttrSet {
        assert!(i < MAX_ATTRIBUTES);
        AttrSet(self.0 | (1u64 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> AttrSet {
        assert!(i < MAX_ATTRIBUTES);
        AttrSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: AttrSet) -> AttrSet {
        AttrSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AttrSet) -> AttrSet {
        AttrSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: AttrSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// All subsets of `self` (including the empty set and `self`), in
    /// ascending bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// All subsets of `{0..n}` in ascending bitmask order.
    pub fn powerset(n: usize) -> Subsets {
        AttrSet::full(n).subsets()
    }

    /// Render the subset with attribute names, e.g. `{a2,a3}`.
    pub fn display<S: AsRef<str>>(self, names: &[S]) -> String {
        let mut out = String::from("{");
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            match names.get(i) {
                Some(name) => out.push_str(name.as_ref()),
                None => out.push_str(&i.to_string()),
            }
        }
        out.push('}');
        out
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AttrSet{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over member indices of an [`AttrSet`].
pub struct Indices(u64);

impl Iterator for Indices {
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

impl ExactSizeIterator for Indices {}

/// Iterator over all sub-masks of a mask, ascending.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = AttrSet;

    fn next(&mut self) -> Option<AttrSet> {
        let cur = self.next?;
        // standard ascending sub-mask step: (s - m) & m wraps back to 0 at the end
        let following = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if following == 0 { None } else { Some(following) };
        Some(AttrSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_membership() {
        let s = AttrSet::full(3);
        assert_eq!(s.len(), 3);
        assert!(s.contains(0) && s.contains(1) && s.contains(2));
        assert!(!s.contains(3));
        assert!(AttrSet::EMPTY.is_empty());
    }

    #[test]
    fn subset_enumeration_is_complete_and_ascending() {
        let m = AttrSet::from_indices([0, 2, 3]);
        let subs: Vec<u64> = m.subsets().map(|s| s.bits()).collect();
        assert_eq!(subs.len(), 8);
        let mut sorted = subs.clone();
        sorted.sort_unstable();
        assert_eq!(subs, sorted);
        for s in m.subsets() {
            assert!(s.is_subset_of(m));
        }
    }

    #[test]
    fn powerset_counts() {
        assert_eq!(AttrSet::powerset(4).count(), 16);
        assert_eq!(AttrSet::powerset(0).count(), 1);
    }

    #[test]
    fn display_with_names() {
        let names = ["a1", "a2", "a3"];
        assert_eq!(AttrSet::from_indices([1, 2]).display(&names), "{a2,a3}");
        assert_eq!(AttrSet::EMPTY.display(&names), "{}");
    }

    #[test]
    fn with_without_roundtrip() {
        let s = AttrSet::singleton(5).with(9);
        assert_eq!(s.without(9), AttrSet::singleton(5));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![5, 9]);
    }
}
