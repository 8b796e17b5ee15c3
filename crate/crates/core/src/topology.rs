//! Finite topologies presented by their closed sets.
//!
//! Closed sets of a space form a co-Heyting algebra: subtraction is
//! `closure(A \ B)` and the paraconsistent negation `pneg(S)` is the closure
//! of the complement, which meets a closed `S` exactly on its boundary.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::set::{render_set, StateSet, MAX_STATES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    /// An operation that needs closed arguments received an open or arbitrary set.
    #[error("argument {0:?} is not closed")]
    NotClosed(StateSet),
    /// A set mentions points outside the carrier.
    #[error("set {0:?} leaves the carrier")]
    OutsideCarrier(StateSet),
    #[error("carrier of {0} points exceeds the limit of {MAX_STATES}")]
    TooLarge(usize),
}

/// One failed axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingEmpty,
    MissingCarrier,
    OutsideCarrier(StateSet),
    NotUnionClosed(StateSet, StateSet),
    NotIntersectionClosed(StateSet, StateSet),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingEmpty => write!(f, "missing empty set"),
            Violation::MissingCarrier => write!(f, "missing carrier"),
            Violation::OutsideCarrier(s) => write!(f, "{s:?} leaves the carrier"),
            Violation::NotUnionClosed(a, b) => write!(f, "union of {a:?} and {b:?} missing"),
            Violation::NotIntersectionClosed(a, b) => {
                write!(f, "intersection of {a:?} and {b:?} missing")
            }
        }
    }
}

/// A family of closed subsets of `{0, .., size - 1}`.
///
/// Construction does not enforce the axioms; call [`ClosedTopology::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedTopology {
    size: usize,
    closed: Vec<StateSet>,
}

impl ClosedTopology {
    /// Family as given, deduplicated and sorted.
    pub fn new(
        size: usize,
        closed: impl IntoIterator<Item = StateSet>,
    ) -> Result<Self, TopologyError> {
        if size > MAX_STATES {
            return Err(TopologyError::TooLarge(size));
        }
        let closed: BTreeSet<StateSet> = closed.into_iter().collect();
        Ok(ClosedTopology {
            size,
            closed: closed.into_iter().collect(),
        })
    }

    /// Every subset is closed.
    pub fn discrete(size: usize) -> Self {
        ClosedTopology {
            size,
            closed: StateSet::all_subsets(size).collect(),
        }
    }

    /// Only the empty set and the carrier are closed.
    pub fn indiscrete(size: usize) -> Self {
        let mut closed = vec![StateSet::EMPTY, StateSet::full(size)];
        closed.dedup();
        ClosedTopology { size, closed }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn carrier(&self) -> StateSet {
        StateSet::full(self.size)
    }

    pub fn closed_sets(&self) -> &[StateSet] {
        &self.closed
    }

    pub fn is_closed(&self, s: StateSet) -> bool {
        self.closed.binary_search(&s).is_ok()
    }

    pub fn is_open(&self, s: StateSet) -> bool {
        s.is_subset(self.carrier()) && self.is_closed(self.carrier() - s)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.size).all(|x| self.is_closed(StateSet::singleton(x))) && self.validate().is_empty()
    }

    /// Every axiom violation; empty means the family is a topology.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let carrier = self.carrier();
        if !self.is_closed(StateSet::EMPTY) {
            out.push(Violation::MissingEmpty);
        }
        if !self.is_closed(carrier) {
            out.push(Violation::MissingCarrier);
        }
        for &a in &self.closed {
            if !a.is_subset(carrier) {
                out.push(Violation::OutsideCarrier(a));
            }
        }
        for (i, &a) in self.closed.iter().enumerate() {
            for &b in &self.closed[i + 1..] {
                if !self.is_closed(a | b) {
                    out.push(Violation::NotUnionClosed(a, b));
                }
                if !self.is_closed(a & b) {
                    out.push(Violation::NotIntersectionClosed(a, b));
                }
            }
        }
        out
    }

    /// Smallest closed superset.
    pub fn closure(&self, s: StateSet) -> StateSet {
        self.closed
            .iter()
            .filter(|c| s.is_subset(**c))
            .fold(self.carrier(), |acc, &c| acc & c)
    }

    /// Largest open subset.
    pub fn interior(&self, s: StateSet) -> StateSet {
        let carrier = self.carrier();
        carrier - self.closure(carrier - s)
    }

    pub fn boundary(&self, s: StateSet) -> StateSet {
        self.closure(s) - self.interior(s)
    }

    /// Paraconsistent negation: closure of the complement.
    pub fn pneg(&self, s: StateSet) -> StateSet {
        self.closure(self.carrier() - s)
    }

    /// Intuitionistic negation: interior of the complement.
    pub fn ineg(&self, s: StateSet) -> StateSet {
        self.interior(self.carrier() - s)
    }

    fn require_closed(&self, s: StateSet) -> Result<(), TopologyError> {
        if !s.is_subset(self.carrier()) {
            return Err(TopologyError::OutsideCarrier(s));
        }
        if !self.is_closed(s) {
            return Err(TopologyError::NotClosed(s));
        }
        Ok(())
    }

    /// Co-Heyting subtraction `a \ b`: the least closed `x` with `a <= x | b`.
    pub fn subtraction(&self, a: StateSet, b: StateSet) -> Result<StateSet, TopologyError> {
        self.require_closed(a)?;
        self.require_closed(b)?;
        Ok(self.closure(a - b))
    }

    /// Exponent of closed sets: `closure(complement(c1) & c2)`.
    pub fn exponent(&self, c1: StateSet, c2: StateSet) -> Result<StateSet, TopologyError> {
        self.require_closed(c1)?;
        self.require_closed(c2)?;
        Ok(self.closure((self.carrier() - c1) & c2))
    }

    /// Product topology. Point `(a, b)` has index `a * other.size() + b`.
    pub fn product(&self, other: &ClosedTopology) -> Result<ClosedTopology, TopologyError> {
        let size = self.size * other.size;
        if size > MAX_STATES {
            return Err(TopologyError::TooLarge(size));
        }
        let mut family: BTreeSet<StateSet> = BTreeSet::new();
        for &c in &self.closed {
            for &d in &other.closed {
                family.insert(rectangle(c, d, other.size));
            }
        }
        let mut frontier: Vec<StateSet> = family.iter().copied().collect();
        let base = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &f in &frontier {
                for &r in &base {
                    if family.insert(f | r) {
                        next.push(f | r);
                    }
                }
            }
            frontier = next;
        }
        Ok(ClosedTopology {
            size,
            closed: family.into_iter().collect(),
        })
    }

    /// Closed sets in `{} {a} {a b}` form.
    pub fn render(&self, names: &[String]) -> String {
        self.closed
            .iter()
            .map(|&c| render_set(c, names))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `c x d` inside a product whose second factor has `width` points.
pub fn rectangle(c: StateSet, d: StateSet, width: usize) -> StateSet {
    c.iter()
        .flat_map(|a| d.iter().map(move |b| a * width + b))
        .collect()
}

/// Every topology on `n` labeled points, in a fixed order.
///
/// Grows union- and intersection-closed families one set at a time, keeping
/// each family once. Practical for `n <= 4`.
pub fn enumerate_topologies(n: usize) -> Vec<ClosedTopology> {
    let carrier = StateSet::full(n);
    let start: BTreeSet<StateSet> = [StateSet::EMPTY, carrier].into_iter().collect();
    let mut seen: BTreeSet<Vec<StateSet>> = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(fam) = stack.pop() {
        let key: Vec<StateSet> = fam.iter().copied().collect();
        if !seen.insert(key) {
            continue;
        }
        for s in StateSet::all_subsets(n) {
            if !fam.contains(&s) {
                stack.push(lattice_closure(&fam, s));
            }
        }
    }
    seen.into_iter()
        .map(|closed| ClosedTopology { size: n, closed })
        .collect()
}

fn lattice_closure(fam: &BTreeSet<StateSet>, s: StateSet) -> BTreeSet<StateSet> {
    let mut out = fam.clone();
    let mut pending = vec![s];
    while let Some(x) = pending.pop() {
        if !out.insert(x) {
            continue;
        }
        let current: Vec<StateSet> = out.iter().copied().collect();
        for y in current {
            for z in [x | y, x & y] {
                if !out.contains(&z) {
                    pending.push(z);
                }
            }
        }
    }
    out
}

/// Failures of the co-Heyting laws on one topology.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    /// `(y, z, x)` with `y \ z <= x` disagreeing with `y <= x | z`.
    pub adjunction: Vec<(StateSet, StateSet, StateSet)>,
    /// Closed `s` with `s | pneg(s)` short of the carrier.
    pub join: Vec<StateSet>,
    /// Closed `s` with `s & pneg(s) != boundary(s)`.
    pub boundary_overlap: Vec<StateSet>,
    /// `pneg(s)` not the least closed set whose join with `s` is the carrier.
    pub pneg_minimality: Vec<StateSet>,
}

impl LawReport {
    pub fn violations(&self) -> usize {
        self.adjunction.len()
            + self.join.len()
            + self.boundary_overlap.len()
            + self.pneg_minimality.len()
    }
}

/// Checks the subtraction adjunction and the negation laws over every closed
/// set (and triple) of `t`.
pub fn check_laws(t: &ClosedTopology) -> LawReport {
    let mut r = LawReport::default();
    let carrier = t.carrier();
    let closed = t.closed_sets();
    for &y in closed {
        for &z in closed {
            let sub = t.subtraction(y, z).expect("closed arguments");
            for &x in closed {
                if sub.is_subset(x) != y.is_subset(x | z) {
                    r.adjunction.push((y, z, x));
                }
            }
        }
        let n = t.pneg(y);
        if y | n != carrier {
            r.join.push(y);
        }
        if y & n != t.boundary(y) {
            r.boundary_overlap.push(y);
        }
        let least = closed
            .iter()
            .filter(|c| y | **c == carrier)
            .fold(carrier, |acc, &c| acc & c);
        if least != n {
            r.pneg_minimality.push(y);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    /// Closed sets {}, {a}, {a b} on {a, b}.
    fn sierpinski() -> ClosedTopology {
        ClosedTopology::new(2, [set(&[]), set(&[0]), set(&[0, 1])]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(sierpinski().validate().is_empty());
        assert!(ClosedTopology::discrete(2).validate().is_empty());
        let bad = ClosedTopology::new(2, [set(&[0])]).unwrap();
        assert_eq!(
            bad.validate(),
            vec![Violation::MissingEmpty, Violation::MissingCarrier]
        );
        let no_union =
            ClosedTopology::new(2, [set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap();
        assert!(no_union.validate().is_empty());
        let gap =
            ClosedTopology::new(3, [set(&[]), set(&[0]), set(&[1]), set(&[0, 1, 2])]).unwrap();
        assert_eq!(
            gap.validate(),
            vec![Violation::NotUnionClosed(set(&[0]), set(&[1]))]
        );
    }

    #[test]
    fn closure_interior_boundary() {
        let t = sierpinski();
        let a = set(&[0]);
        assert_eq!(t.closure(a), a);
        assert_eq!(t.interior(a), StateSet::EMPTY);
        assert_eq!(t.boundary(a), a);
        let all = t.carrier();
        assert_eq!(t.closure(all), all);
        assert_eq!(t.boundary(all), all - t.interior(all));
        assert_eq!(t.closure(StateSet::EMPTY), StateSet::EMPTY);
        assert_eq!(t.interior(StateSet::EMPTY), StateSet::EMPTY);
        assert_eq!(t.boundary(StateSet::EMPTY), StateSet::EMPTY);
    }

    #[test]
    fn negations() {
        let t = sierpinski();
        assert_eq!(t.pneg(set(&[0])), set(&[0, 1]));
        assert_eq!(t.pneg(t.carrier()), StateSet::EMPTY);
        assert_eq!(t.ineg(t.carrier()), StateSet::EMPTY);
        let d = ClosedTopology::discrete(3);
        for s in StateSet::all_subsets(3) {
            assert_eq!(d.ineg(s), d.carrier() - s);
            assert_eq!(d.pneg(s), d.carrier() - s);
        }
    }

    #[test]
    fn subtraction_and_exponent() {
        let t = sierpinski();
        for &a in t.closed_sets() {
            assert_eq!(t.subtraction(a, StateSet::EMPTY).unwrap(), a);
            assert_eq!(t.subtraction(a, a).unwrap(), StateSet::EMPTY);
        }
        assert_eq!(
            t.subtraction(set(&[1]), StateSet::EMPTY),
            Err(TopologyError::NotClosed(set(&[1])))
        );
        let all = t.carrier();
        assert_eq!(t.exponent(all, set(&[0])).unwrap(), StateSet::EMPTY);
        assert_eq!(t.exponent(StateSet::EMPTY, all).unwrap(), all);
        assert_eq!(t.exponent(set(&[0]), all).unwrap(), all);
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_topologies(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
        assert!(enumerate_topologies(3)
            .iter()
            .all(|t| t.validate().is_empty()));
    }

    #[test]
    fn products() {
        let d = ClosedTopology::discrete(2)
            .product(&ClosedTopology::discrete(3))
            .unwrap();
        assert_eq!(d.size(), 6);
        assert_eq!(d, ClosedTopology::discrete(6));
        for a in enumerate_topologies(2) {
            for b in enumerate_topologies(2) {
                assert!(a.product(&b).unwrap().validate().is_empty());
            }
        }
    }

    #[test]
    fn laws_on_small_topologies() {
        for n in 0..=3 {
            for t in enumerate_topologies(n) {
                assert_eq!(check_laws(&t).violations(), 0, "{t:?}");
            }
        }
    }
}
