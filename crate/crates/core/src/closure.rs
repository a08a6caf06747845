//! Sets of states and intersection-closed families over them.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use thiserror::Error;

/// Largest number of states a [`StateSet`] can address.
pub const MAX_STATES: usize = 64;

/// A subset of at most 64 states, one bit per state index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        if n == MAX_STATES {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        StateSet(1u64 << i)
    }

    pub fn from_indices(items: impl IntoIterator<Item = usize>) -> Self {
        StateSet(items.into_iter().fold(0, |m, i| m | 1u64 << i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_STATES && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: StateSet) -> StateSet {
        StateSet(self.0 & !other.0)
    }

    /// Complement within a ground set of `n` states.
    pub fn complement(self, n: usize) -> StateSet {
        StateSet(!self.0 & StateSet::full(n).0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl BitAnd for StateSet {
    type Output = StateSet;
    fn bitand(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 & rhs.0)
    }
}

impl BitOr for StateSet {
    type Output = StateSet;
    fn bitor(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 | rhs.0)
    }
}

impl Not for StateSet {
    type Output = StateSet;
    fn not(self) -> StateSet {
        StateSet(!self.0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        StateSet::from_indices(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("ground set of {0} states exceeds the limit of {MAX_STATES}")]
    TooManyStates(usize),
    #[error("generator {index} references state {state}, ground set has {size}")]
    UnknownState { index: usize, state: usize, size: usize },
    #[error("closure grew past {cap} members")]
    Explosion { cap: usize },
}

/// A Moore family: subsets of a ground set closed under intersection and
/// containing the ground set itself.
///
/// Members are kept sorted by size, then by bit pattern, so the empty set (if
/// present) comes first and the ground set last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSystem {
    ground: usize,
    members: Vec<StateSet>,
}

impl ClosureSystem {
    /// Smallest intersection-closed family containing `generators` and the
    /// ground set.
    pub fn generate(
        ground: usize,
        generators: impl IntoIterator<Item = StateSet>,
        cap: usize,
    ) -> Result<Self, ClosureError> {
        Self::generate_with(ground, generators, cap, |_| None)
    }

    /// Like [`generate`](Self::generate) but also closed under `extra`, a
    /// unary map applied to every member (e.g. the orthogonal-set map). The
    /// map returns `None` when it has nothing to add.
    pub fn generate_with(
        ground: usize,
        generators: impl IntoIterator<Item = StateSet>,
        cap: usize,
        extra: impl Fn(StateSet) -> Option<StateSet>,
    ) -> Result<Self, ClosureError> {
        if ground > MAX_STATES {
            return Err(ClosureError::TooManyStates(ground));
        }
        let full = StateSet::full(ground);
        let mut seen: HashSet<StateSet> = HashSet::new();
        let mut members: Vec<StateSet> = Vec::new();
        let mut queue: Vec<StateSet> = Vec::new();
        let push = |s: StateSet,
                    seen: &mut HashSet<StateSet>,
                    members: &mut Vec<StateSet>,
                    queue: &mut Vec<StateSet>|
         -> Result<(), ClosureError> {
            if seen.insert(s) {
                if seen.len() > cap {
                    return Err(ClosureError::Explosion { cap });
                }
                members.push(s);
                queue.push(s);
            }
            Ok(())
        };
        for (index, g) in std::iter::once(full).chain(generators).enumerate() {
            if !g.is_subset(full) {
                let state = g.difference(full).first().unwrap_or(0);
                return Err(ClosureError::UnknownState { index: index.saturating_sub(1), state, size: ground });
            }
            push(g, &mut seen, &mut members, &mut queue)?;
        }
        let mut done = 0;
        while done < queue.len() {
            let f = queue[done];
            done += 1;
            if let Some(e) = extra(f) {
                push(e & full, &mut seen, &mut members, &mut queue)?;
            }
            // Intersect with everything known so far, including later additions
            // which will in turn meet f when they are processed.
            let mut i = 0;
            while i < members.len() {
                let g = members[i];
                push(f & g, &mut seen, &mut members, &mut queue)?;
                i += 1;
            }
        }
        members.sort_by_key(|s| (s.len(), s.bits()));
        Ok(ClosureSystem { ground, members })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &[StateSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, s: StateSet) -> Option<usize> {
        self.members.binary_search_by_key(&(s.len(), s.bits()), |m| (m.len(), m.bits())).ok()
    }

    pub fn contains(&self, s: StateSet) -> bool {
        self.position(s).is_some()
    }

    /// Intersection of all members containing `x`.
    pub fn closure(&self, x: StateSet) -> StateSet {
        self.members
            .iter()
            .filter(|m| x.is_subset(**m))
            .fold(StateSet::full(self.ground), |acc, &m| acc & m)
    }
}
