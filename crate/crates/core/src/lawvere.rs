//! The diagonal fixed-point argument on finite sets.
//!
//! `g: A -> Y^A` is weakly point-surjective when every map `p: A -> Y` equals
//! some `g(x)`. If so, every `f: Y -> Y` has the fixed point `g(x)(x)`, where
//! `x` represents `y |-> f(g(y)(y))`. Hence no such `g` exists once `Y` has a
//! fixed-point-free endomap, which every `Y` with two or more points does.

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawvereError {
    /// Exhaustive search is limited to `|A| * |Y| <= 9`.
    #[error(
        "search over |A| = {size_a}, |Y| = {size_y} exceeds the limit |A|*|Y| <= {SEARCH_LIMIT}"
    )]
    TooLarge { size_a: usize, size_y: usize },
    #[error("carriers must be nonempty")]
    Empty,
    /// `g` is not a total map into `Y^A`.
    #[error("g is not a total map A -> Y^A")]
    NotTotal,
}

pub const SEARCH_LIMIT: usize = 9;

/// A map `g: A -> Y^A` on `A = {0..size_a}` and `Y = {0..size_y}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSelfMap {
    size_a: usize,
    size_y: usize,
    g: Vec<Vec<usize>>,
}

/// One endomap `f` of `Y` and what the diagonal construction gave for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointRecord {
    pub f: Vec<usize>,
    /// The point of `A` representing `y |-> f(g(y)(y))`.
    pub representative: usize,
    /// `g(x)(x)` for that representative.
    pub point: usize,
    /// `f(point) == point`.
    pub fixed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPointReport {
    /// `g` is not weakly point-surjective; carries an unrepresented map.
    NotApplicable { unrepresented: Vec<usize> },
    /// One record per endomap of `Y`.
    Checked(Vec<FixedPointRecord>),
}

impl FixedPointReport {
    /// Whether every endomap got a fixed point (vacuously true when not applicable).
    pub fn holds(&self) -> bool {
        match self {
            FixedPointReport::NotApplicable { .. } => true,
            FixedPointReport::Checked(records) => records.iter().all(|r| r.fixed),
        }
    }
}

/// Outcome of [`search_wps`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpsSearch {
    pub size_a: usize,
    pub size_y: usize,
    /// Number of maps `g` examined.
    pub candidates: u64,
    /// Every weakly point-surjective `g`, in enumeration order.
    pub instances: Vec<FiniteSelfMap>,
}

impl WpsSearch {
    pub fn first(&self) -> Option<&FiniteSelfMap> {
        self.instances.first()
    }

    pub fn exhausted(&self) -> bool {
        self.instances.is_empty()
    }
}

impl FiniteSelfMap {
    /// `g[x][a]` is `g(x)(a)`.
    pub fn new(size_a: usize, size_y: usize, g: Vec<Vec<usize>>) -> Result<Self, LawvereError> {
        if size_a == 0 || size_y == 0 {
            return Err(LawvereError::Empty);
        }
        let total = g.len() == size_a
            && g.iter()
                .all(|row| row.len() == size_a && row.iter().all(|&v| v < size_y));
        if !total {
            return Err(LawvereError::NotTotal);
        }
        Ok(FiniteSelfMap { size_a, size_y, g })
    }

    pub fn size_a(&self) -> usize {
        self.size_a
    }

    pub fn size_y(&self) -> usize {
        self.size_y
    }

    pub fn apply(&self, x: usize, a: usize) -> usize {
        self.g[x][a]
    }

    fn represent(&self, p: &[usize]) -> Option<usize> {
        self.g.iter().position(|row| row == p)
    }

    /// `None` when weakly point-surjective, otherwise the first map `A -> Y`
    /// that no `g(x)` equals.
    pub fn unrepresented(&self) -> Option<Vec<usize>> {
        all_maps(self.size_a, self.size_y).find(|p| self.represent(p).is_none())
    }

    pub fn is_weakly_point_surjective(&self) -> bool {
        self.unrepresented().is_none()
    }

    /// Runs the diagonal construction for every endomap of `Y`.
    pub fn check_fixed_point_property(&self) -> FixedPointReport {
        if let Some(unrepresented) = self.unrepresented() {
            return FixedPointReport::NotApplicable { unrepresented };
        }
        let records = all_maps(self.size_y, self.size_y)
            .map(|f| {
                let p: Vec<usize> = (0..self.size_a).map(|y| f[self.g[y][y]]).collect();
                let x = self.represent(&p).expect("weakly point-surjective");
                let point = self.g[x][x];
                FixedPointRecord {
                    fixed: f[point] == point,
                    f,
                    representative: x,
                    point,
                }
            })
            .collect();
        FixedPointReport::Checked(records)
    }
}

/// Every total map `{0..n} -> {0..m}` as a value vector, in lexicographic order.
pub fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = (m as u64).pow(n as u32);
    (0..count).map(move |i| decode(i, n, m))
}

fn decode(mut i: u64, n: usize, m: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = (i % m as u64) as usize;
        i /= m as u64;
    }
    v
}

/// Enumerates every `g: A -> Y^A` and collects the weakly point-surjective ones.
pub fn search_wps(size_a: usize, size_y: usize) -> Result<WpsSearch, LawvereError> {
    if size_a == 0 || size_y == 0 {
        return Err(LawvereError::Empty);
    }
    if size_a * size_y > SEARCH_LIMIT {
        return Err(LawvereError::TooLarge { size_a, size_y });
    }
    let rows = (size_y as u64).pow(size_a as u32);
    let candidates = rows.pow(size_a as u32);
    let instances = (0..candidates)
        .into_par_iter()
        .filter_map(|i| {
            let g = decode(i, size_a, rows as usize)
                .into_iter()
                .map(|r| decode(r as u64, size_a, size_y))
                .collect();
            let s = FiniteSelfMap { size_a, size_y, g };
            s.is_weakly_point_surjective().then_some(s)
        })
        .collect();
    Ok(WpsSearch {
        size_a,
        size_y,
        candidates,
        instances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_codomain() {
        let s = FiniteSelfMap::new(2, 1, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(s.is_weakly_point_surjective());
        let r = s.check_fixed_point_property();
        assert!(r.holds());
        assert!(matches!(r, FixedPointReport::Checked(ref v) if v.len() == 1 && v[0].point == 0));
    }

    #[test]
    fn constant_rows_miss_identity() {
        let s = FiniteSelfMap::new(2, 2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert!(!s.is_weakly_point_surjective());
        assert_eq!(s.unrepresented(), Some(vec![0, 1]));
        assert!(matches!(
            s.check_fixed_point_property(),
            FixedPointReport::NotApplicable { .. }
        ));
    }

    #[test]
    fn searches() {
        assert!(!search_wps(1, 1).unwrap().exhausted());
        for (a, y) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            let r = search_wps(a, y).unwrap();
            assert!(r.exhausted(), "({a}, {y})");
            assert_eq!(r.candidates, ((y as u64).pow(a as u32)).pow(a as u32));
        }
        assert!(matches!(
            search_wps(4, 3),
            Err(LawvereError::TooLarge { .. })
        ));
        assert_eq!(search_wps(0, 1), Err(LawvereError::Empty));
    }

    #[test]
    fn map_enumeration() {
        let maps: Vec<_> = all_maps(2, 2).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
