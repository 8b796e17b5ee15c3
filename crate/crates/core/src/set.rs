//! Fixed-width bitsets over state indices.
//!
//! Every carrier in the workbench is small (desk-scale models), so a subset of
//! states is a single `u64`. Index `i` stands for the `i`-th declared state of
//! whatever model the set belongs to.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub};

/// Largest carrier a [`StateSet`] can describe.
pub const MAX_STATES: usize = 64;

/// A subset of `{0, .., MAX_STATES - 1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n - 1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        if n >= MAX_STATES {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_STATES);
        StateSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_STATES && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_STATES);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < MAX_STATES);
        self.0 &= !(1u64 << i);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        StateSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        StateSet(self.0 & !other.0)
    }

    /// Complement relative to the carrier `{0, .., n - 1}`.
    pub fn complement(self, n: usize) -> Self {
        StateSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `{0, .., n - 1}` in increasing bit order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = StateSet> {
        assert!(
            n < MAX_STATES,
            "cannot enumerate the power set of {n} states"
        );
        (0..(1u64 << n)).map(StateSet)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = StateSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for StateSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
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

impl BitOr for StateSet {
    type Output = StateSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitOrAssign for StateSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for StateSet {
    type Output = StateSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl BitAndAssign for StateSet {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl Sub for StateSet {
    type Output = StateSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

/// Renders `set` as `{a b c}` using `names` for the indices.
pub fn render_set(set: StateSet, names: &[String]) -> String {
    let parts: Vec<&str> = set.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_complement() {
        assert_eq!(StateSet::full(0), StateSet::EMPTY);
        assert_eq!(StateSet::full(3).bits(), 0b111);
        assert_eq!(StateSet::full(64).len(), 64);
        let s: StateSet = [0, 2].into_iter().collect();
        assert_eq!(s.complement(3), StateSet::singleton(1));
    }

    #[test]
    fn iteration_is_ascending() {
        let s: StateSet = [5, 1, 3].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(s.first(), Some(1));
        assert_eq!(StateSet::EMPTY.first(), None);
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(StateSet::all_subsets(4).count(), 16);
    }
}
