//! Atoms and atom sets.
//!
//! Atoms are the rank-1 elements of a geometric lattice, identified with the
//! ground elements 1..=n of the underlying simple matroid. Sets of atoms are
//! stored as 64-bit masks, which caps the ground size at [`MAX_ATOMS`]; the
//! configurable runtime cap (default 14) sits well below that.

use std::cmp::Ordering;
use std::fmt;

/// Hard structural limit on ground-set size imposed by the bitmask encoding.
pub const MAX_ATOMS: usize = 64;

/// A ground element / lattice atom, labeled 1..=n.
///
/// `Ord` is the natural integer order on labels; comparisons under a chosen
/// atom order go through [`crate::labeling::AtomOrder`] explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom(u8);

impl Atom {
    /// Atom with 1-based label `label`. Panics outside 1..=64.
    pub fn new(label: usize) -> Atom {
        assert!(
            (1..=MAX_ATOMS).contains(&label),
            "atom label {label} outside 1..={MAX_ATOMS}"
        );
        Atom(label as u8)
    }

    /// 1-based label.
    pub fn label(self) -> usize {
        self.0 as usize
    }

    /// 0-based bit index.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of atoms, as a bitmask (atom k ↔ bit k-1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    /// The full set {1, ..., n}.
    pub fn full(n: usize) -> AtomSet {
        assert!(n <= MAX_ATOMS);
        if n == 0 {
            AtomSet(0)
        } else {
            AtomSet(u64::MAX >> (MAX_ATOMS - n))
        }
    }

    pub fn singleton(a: Atom) -> AtomSet {
        AtomSet(1u64 << a.index())
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, a: Atom) -> bool {
        self.0 >> a.index() & 1 == 1
    }

    #[must_use]
    pub fn insert(self, a: Atom) -> AtomSet {
        AtomSet(self.0 | 1u64 << a.index())
    }

    #[must_use]
    pub fn remove(self, a: Atom) -> AtomSet {
        AtomSet(self.0 & !(1u64 << a.index()))
    }

    #[must_use]
    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    /// Set difference `self \ other`.
    #[must_use]
    pub fn minus(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: AtomSet) -> bool {
        self != other && self.is_subset_of(other)
    }

    /// Atoms in ascending label order.
    pub fn iter(self) -> impl Iterator<Item = Atom> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(Atom::new(i + 1))
            }
        })
    }

    /// Smallest atom under the natural order, if any.
    pub fn min_natural(self) -> Option<Atom> {
        (self.0 != 0).then(|| Atom::new(self.0.trailing_zeros() as usize + 1))
    }

    /// Lexicographic comparison of the ascending label sequences, so that e.g.
    /// {1,2,4} < {1,3} and {1,3} < {1,3,4}.
    pub fn lex_cmp(self, other: AtomSet) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // All atoms below the smallest differing one are shared, so the owner
        // of that atom compares less unless the other side has run out.
        let m = diff.trailing_zeros();
        let above = |bits: u64| (bits >> m) >> 1 != 0;
        if self.0 >> m & 1 == 1 {
            if above(other.0) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if above(self.0) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Bare comma-separated labels, empty string for ∅ (the CLI chain-token form).
    pub fn plain(self) -> String {
        self.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> AtomSet {
        iter.into_iter().fold(AtomSet::EMPTY, AtomSet::insert)
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{{{}}}", self.plain())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(labels: &[usize]) -> AtomSet {
        labels.iter().map(|&l| Atom::new(l)).collect()
    }

    #[test]
    fn basic_ops() {
        let s = set(&[1, 3, 4]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(Atom::new(3)));
        assert!(!s.contains(Atom::new(2)));
        assert_eq!(s.minus(set(&[3])), set(&[1, 4]));
        assert_eq!(s.union(set(&[2])), AtomSet::full(4));
        assert_eq!(s.intersection(set(&[3, 4, 5])), set(&[3, 4]));
        assert!(set(&[1, 3]).is_proper_subset_of(s));
        assert!(!s.is_proper_subset_of(s));
        assert_eq!(s.min_natural(), Some(Atom::new(1)));
        assert_eq!(AtomSet::EMPTY.min_natural(), None);
        assert_eq!(AtomSet::full(0), AtomSet::EMPTY);
        assert_eq!(AtomSet::full(64).len(), 64);
    }

    #[test]
    fn display_forms() {
        assert_eq!(set(&[1, 2, 4]).to_string(), "{1,2,4}");
        assert_eq!(AtomSet::EMPTY.to_string(), "∅");
        assert_eq!(set(&[3, 4]).plain(), "3,4");
        assert_eq!(AtomSet::EMPTY.plain(), "");
    }

    #[test]
    fn lex_examples() {
        assert_eq!(set(&[1, 2, 4]).lex_cmp(set(&[1, 3])), Ordering::Less);
        assert_eq!(set(&[1, 3]).lex_cmp(set(&[1, 3, 4])), Ordering::Less);
        assert_eq!(set(&[1, 3, 4]).lex_cmp(set(&[1, 3])), Ordering::Greater);
        assert_eq!(set(&[2]).lex_cmp(set(&[1, 2])), Ordering::Greater);
        assert_eq!(AtomSet::EMPTY.lex_cmp(set(&[1])), Ordering::Less);
        assert_eq!(set(&[2]).lex_cmp(set(&[2])), Ordering::Equal);
    }

    /// Reference comparison via materialized ascending label vectors.
    fn lex_cmp_naive(a: AtomSet, b: AtomSet) -> Ordering {
        let va: Vec<_> = a.iter().map(Atom::label).collect();
        let vb: Vec<_> = b.iter().map(Atom::label).collect();
        va.cmp(&vb)
    }

    proptest! {
        #[test]
        fn lex_cmp_matches_naive(a in 0u64..1 << 14, b in 0u64..1 << 14) {
            let (a, b) = (AtomSet(a), AtomSet(b));
            prop_assert_eq!(a.lex_cmp(b), lex_cmp_naive(a, b));
        }

        #[test]
        fn iter_ascending(a in 0u64..1 << 16) {
            let v: Vec<_> = AtomSet(a).iter().map(Atom::label).collect();
            let mut sorted = v.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(&v, &sorted);
            prop_assert_eq!(v.len(), AtomSet(a).len());
        }
    }
}
