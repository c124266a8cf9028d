//! Fixed-capacity index sets.
//!
//! Arrow sets (sieves) and element sets (subpresheaf components) are stored as
//! 128-bit masks. Every category and presheaf in this crate is desk-scale, and
//! the sieve-space enumerations that the topology code relies on are
//! exponential long before 128 indices are reached.

use std::fmt;

/// Maximum number of indices a [`BitSet`] can hold.
pub const CAPACITY: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSet(u128);

impl BitSet {
    pub const EMPTY: BitSet = BitSet(0);

    pub fn from_bits(bits: u128) -> Self {
        BitSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < CAPACITY);
        BitSet(1u128 << i)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        if n == CAPACITY {
            BitSet(u128::MAX)
        } else {
            BitSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < CAPACITY && (self.0 >> i) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < CAPACITY);
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < CAPACITY {
            self.0 &= !(1u128 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: BitSet) -> BitSet {
        BitSet(self.0 | other.0)
    }

    pub fn intersection(self, other: BitSet) -> BitSet {
        BitSet(self.0 & other.0)
    }

    pub fn difference(self, other: BitSet) -> BitSet {
        BitSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: BitSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: BitSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BitSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for BitSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u128);

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

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    universe: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            // next submask: (cur - universe) & universe, computed without overflow
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(BitSet(cur))
    }
}
