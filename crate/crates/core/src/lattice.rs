//! Finite bounded lattices given by an explicit order relation.
//!
//! The relation is stored as bitset rows in both directions (`up[a]` holds every
//! `b` with `a ≤ b`, `down[b]` every `a` with `a ≤ b`). Nothing is assumed about
//! it: reflexivity, antisymmetry, transitivity and the existence of meets and
//! joins are established by [`FiniteOrtholattice::verify`]. Meets and joins are
//! computed on demand.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::report::{Axiom, AxiomReport, Witness};

pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Size caps shared by every exhaustive builder and checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("{count} elements exceed the cap of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("order relation is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{count} order rows for {expected} labels")]
    RowCount { count: usize, expected: usize },
    #[error("element index {index} out of range for {size} elements")]
    OutOfRange { index: usize, size: usize },
    #[error("ortho map has {len} entries, expected {expected}")]
    OrthoLength { len: usize, expected: usize },
    #[error("{b} is not above {a}")]
    NotComparable { a: usize, b: usize },
    #[error("no ortho map is attached to this lattice")]
    MissingOrtho,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrtholattice {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    bottom: usize,
    top: usize,
    ortho: Option<Vec<usize>>,
}

impl FiniteOrtholattice {
    /// Builds from a boolean matrix, `leq[a][b]` meaning `a ≤ b`.
    pub fn new(
        labels: Vec<String>,
        leq: &[Vec<bool>],
        bottom: usize,
        top: usize,
    ) -> Result<Self, LatticeError> {
        Self::with_limits(labels, leq, bottom, top, &Limits::default())
    }

    pub fn with_limits(
        labels: Vec<String>,
        leq: &[Vec<bool>],
        bottom: usize,
        top: usize,
        limits: &Limits,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if leq.len() != n {
            return Err(LatticeError::RowCount { count: leq.len(), expected: n });
        }
        for (row, r) in leq.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        Self::from_fn(labels, |a, b| leq[a][b], bottom, top, limits)
    }

    /// Builds from a list of `(a, b)` pairs meaning `a ≤ b`, taken verbatim.
    pub fn from_pairs(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
        bottom: usize,
        top: usize,
        limits: &Limits,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= n {
                    return Err(LatticeError::OutOfRange { index: i, size: n });
                }
            }
            m[a][b] = true;
        }
        Self::with_limits(labels, &m, bottom, top, limits)
    }

    /// Builds from an order predicate evaluated on every pair.
    pub fn from_fn(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        bottom: usize,
        top: usize,
        limits: &Limits,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > limits.max_elements {
            return Err(LatticeError::TooLarge { count: n, cap: limits.max_elements });
        }
        for i in [bottom, top] {
            if i >= n {
                return Err(LatticeError::OutOfRange { index: i, size: n });
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            for (b, col) in down.iter_mut().enumerate() {
                if leq(a, b) {
                    row.insert(b);
                    col.insert(a);
                }
            }
        }
        Ok(FiniteOrtholattice { labels, up, down, bottom, top, ortho: None })
    }

    /// Attaches an orthocomplementation candidate. Only the shape is checked
    /// here; the laws are checked by the axiom suite.
    pub fn with_ortho(mut self, map: Vec<usize>) -> Result<Self, LatticeError> {
        let n = self.len();
        if map.len() != n {
            return Err(LatticeError::OrthoLength { len: map.len(), expected: n });
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= n) {
            return Err(LatticeError::OutOfRange { index: bad, size: n });
        }
        self.ortho = Some(map);
        Ok(self)
    }

    pub fn without_ortho(mut self) -> Self {
        self.ortho = None;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Strictly below: `a ≤ b` and `a ≠ b`.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `{ b : a ≤ b }`
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// `{ b : b ≤ a }`
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn ortho(&self) -> Option<&[usize]> {
        self.ortho.as_deref()
    }

    pub fn has_ortho(&self) -> bool {
        self.ortho.is_some()
    }

    /// `a'`, if an ortho map is attached.
    pub fn complement(&self, a: usize) -> Option<usize> {
        self.ortho.as_ref().map(|m| m[a])
    }

    /// The greatest element below every member of `set`, if unique.
    pub fn try_infimum(&self, set: &FixedBitSet) -> Option<usize> {
        let mut lower = FixedBitSet::with_capacity(self.len());
        lower.insert_range(..);
        for s in set.ones() {
            lower.intersect_with(&self.down[s]);
        }
        self.greatest_of(&lower)
    }

    /// The least upper bound of `set`, computed as the infimum of all its
    /// upper bounds.
    pub fn try_supremum(&self, set: &FixedBitSet) -> Option<usize> {
        let mut upper = FixedBitSet::with_capacity(self.len());
        upper.insert_range(..);
        for s in set.ones() {
            upper.intersect_with(&self.up[s]);
        }
        if upper.is_clear() {
            return None;
        }
        let inf = self.try_infimum(&upper)?;
        upper.contains(inf).then_some(inf)
    }

    pub fn try_meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut lower = self.down[a].clone();
        lower.intersect_with(&self.down[b]);
        self.greatest_of(&lower)
    }

    pub fn try_join(&self, a: usize, b: usize) -> Option<usize> {
        let mut set = FixedBitSet::with_capacity(self.len());
        set.insert(a);
        set.insert(b);
        self.try_supremum(&set)
    }

    /// Greatest lower bound.
    ///
    /// Panics if it does not exist; run [`verify`](Self::verify) first.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.try_meet(a, b).unwrap_or_else(|| {
            panic!("no meet for ({}, {}): relation is not a lattice", self.labels[a], self.labels[b])
        })
    }

    /// Least upper bound, as the infimum of all upper bounds.
    ///
    /// Panics if it does not exist; run [`verify`](Self::verify) first.
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.try_join(a, b).unwrap_or_else(|| {
            panic!("no join for ({}, {}): relation is not a lattice", self.labels[a], self.labels[b])
        })
    }

    // The element g of `set` with set ⊆ down[g], if any.
    fn greatest_of(&self, set: &FixedBitSet) -> Option<usize> {
        let want = set.count_ones(..);
        let g = set.ones().max_by_key(|&g| (self.down[g].count_ones(..), std::cmp::Reverse(g)))?;
        (self.down[g].intersection(set).count() == want).then_some(g)
    }

    fn least_of(&self, set: &FixedBitSet) -> Option<usize> {
        let want = set.count_ones(..);
        let l = set.ones().max_by_key(|&l| (self.up[l].count_ones(..), std::cmp::Reverse(l)))?;
        (self.up[l].intersection(set).count() == want).then_some(l)
    }

    /// Elements `x ≠ 0` with nothing strictly between 0 and `x`.
    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| x != self.bottom && self.down[x].ones().all(|y| y == self.bottom || y == x))
            .collect()
    }

    pub fn is_atom(&self, x: usize) -> bool {
        x != self.bottom && self.down[x].ones().all(|y| y == self.bottom || y == x)
    }

    /// Whether `c` covers `b`: `b < c` with nothing strictly between.
    pub fn covers(&self, b: usize, c: usize) -> Result<bool, LatticeError> {
        if !self.leq(b, c) {
            return Err(LatticeError::NotComparable { a: b, b: c });
        }
        Ok(b != c && self.interval(b, c).count_ones(..) == 2)
    }

    /// `{ x : b ≤ x ≤ c }`
    pub fn interval(&self, b: usize, c: usize) -> FixedBitSet {
        let mut s = self.up[b].clone();
        s.intersect_with(&self.down[c]);
        s
    }

    /// Same elements with the order reversed; bottom and top swap.
    pub fn dual(&self) -> Self {
        FiniteOrtholattice {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            bottom: self.top,
            top: self.bottom,
            ortho: self.ortho.clone(),
        }
    }

    /// Covering pairs `(b, c)`, i.e. the edges of the Hasse diagram.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for b in self.elements() {
            for c in self.up[b].ones() {
                if b != c && self.interval(b, c).count_ones(..) == 2 {
                    edges.push((b, c));
                }
            }
        }
        edges
    }

    /// Plain-text adjacency dump, one line per element listing its covers.
    pub fn hasse_dump(&self) -> String {
        let edges = self.hasse_edges();
        let mut out = String::new();
        for b in self.elements() {
            let covers: Vec<&str> =
                edges.iter().filter(|e| e.0 == b).map(|e| self.labels[e.1].as_str()).collect();
            out.push_str(&self.labels[b]);
            out.push_str(" -> ");
            out.push_str(&covers.join(", "));
            out.push('\n');
        }
        out
    }

    /// Checks that the relation is a partial order with the declared bottom and
    /// top, and that every pair has a meet and a join. For a finite bounded
    /// poset this is completeness.
    pub fn verify(&self) -> AxiomReport {
        AxiomReport::from_witness(Axiom::Completeness, self.lattice_violation())
    }

    fn lattice_violation(&self) -> Option<Witness> {
        let n = self.len();
        if let Some(a) = self.elements().find(|&a| !self.leq(a, a)) {
            return Some(Witness::NotReflexive { a });
        }
        for a in 0..n {
            for b in self.up[a].ones().filter(|&b| b > a) {
                if self.leq(b, a) {
                    return Some(Witness::NotAntisymmetric { a, b });
                }
            }
        }
        for a in 0..n {
            for b in self.up[a].ones() {
                if !self.up[b].is_subset(&self.up[a]) {
                    let c = self.up[b].difference(&self.up[a]).next().expect("non-subset");
                    return Some(Witness::NotTransitive { a, b, c });
                }
            }
        }
        if let Some(x) = self.elements().find(|&x| !self.leq(self.bottom, x)) {
            return Some(Witness::BottomNotLeast { bottom: self.bottom, x });
        }
        if let Some(x) = self.elements().find(|&x| !self.leq(x, self.top)) {
            return Some(Witness::TopNotGreatest { top: self.top, x });
        }
        for a in 0..n {
            for b in a + 1..n {
                let mut lower = self.down[a].clone();
                lower.intersect_with(&self.down[b]);
                if self.greatest_of(&lower).is_none() {
                    return Some(Witness::NoMeet { a, b });
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let mut upper = self.up[a].clone();
                upper.intersect_with(&self.up[b]);
                if self.least_of(&upper).is_none() {
                    return Some(Witness::NoJoin { a, b });
                }
            }
        }
        None
    }
}

/// Reflexive-transitive closure of a list of generating pairs over `n` elements.
pub fn order_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        m[a][b] = true;
    }
    for k in 0..n {
        let via = m[k].clone();
        for row in m.iter_mut() {
            if row[k] {
                for (j, &r) in via.iter().enumerate() {
                    row[j] |= r;
                }
            }
        }
    }
    m
}

/// Standard small lattices used by tests, fixtures and the acceptance suite.
pub mod examples {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Power set of `{1..n}` under inclusion with set complement. Element `i`
    /// is the subset whose bitmask is `i`.
    pub fn boolean(n: usize) -> FiniteOrtholattice {
        let size = 1usize << n;
        let names = (0..size)
            .map(|m| {
                let items: Vec<String> =
                    (0..n).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        FiniteOrtholattice::from_fn(names, |a, b| a & b == a, 0, size - 1, &Limits::default())
            .and_then(|l| l.with_ortho((0..size).map(|m| !m & (size - 1)).collect()))
            .expect("boolean lattice")
    }

    /// The chain `0 < x_1 < … < x_{n-2} < 1` with `n` elements, no ortho.
    pub fn chain(n: usize) -> FiniteOrtholattice {
        let mut names = vec!["0".to_string()];
        names.extend((1..n - 1).map(|i| format!("x{i}")));
        names.push("1".to_string());
        FiniteOrtholattice::from_fn(names, |a, b| a <= b, 0, n - 1, &Limits::default())
            .expect("chain")
    }

    /// Pentagon N5: `0 < a < b < 1`, `0 < c < 1`. No ortho.
    pub fn pentagon() -> FiniteOrtholattice {
        let l = labels(&["0", "a", "b", "c", "1"]);
        let m = order_closure(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        FiniteOrtholattice::new(l, &m, 0, 4).expect("pentagon")
    }

    /// Benzene ring O6: `0 < a < b < 1`, `0 < b' < a' < 1` with `a ↔ a'`, `b ↔ b'`.
    pub fn benzene() -> FiniteOrtholattice {
        let l = labels(&["0", "a", "b", "a'", "b'", "1"]);
        let m = order_closure(6, &[(0, 1), (1, 2), (2, 5), (0, 4), (4, 3), (3, 5)]);
        FiniteOrtholattice::new(l, &m, 0, 5)
            .and_then(|l| l.with_ortho(vec![5, 3, 4, 1, 2, 0]))
            .expect("benzene")
    }

    /// MO2: `0`, atoms `a, a', b, b'`, `1`.
    pub fn mo2() -> FiniteOrtholattice {
        let l = labels(&["0", "a", "a'", "b", "b'", "1"]);
        let pairs: Vec<(usize, usize)> = (1..5).flat_map(|x| [(0, x), (x, 5)]).collect();
        let m = order_closure(6, &pairs);
        FiniteOrtholattice::new(l, &m, 0, 5)
            .and_then(|l| l.with_ortho(vec![5, 2, 1, 4, 3, 0]))
            .expect("mo2")
    }

    /// M3 without ortho: `0`, three atoms, `1`.
    pub fn diamond() -> FiniteOrtholattice {
        let l = labels(&["0", "p", "q", "r", "1"]);
        let pairs: Vec<(usize, usize)> = (1..4).flat_map(|x| [(0, x), (x, 4)]).collect();
        FiniteOrtholattice::new(l, &order_closure(5, &pairs), 0, 4).expect("diamond")
    }
}
