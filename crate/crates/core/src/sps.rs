//! State-property systems: states, a property lattice, and which properties
//! are actual in which states.
//!
//! Each lattice element carries yes-no measurement semantics as a pair of
//! state sets: the states where "yes" is certain (the property is actual) and
//! the states where "no" is certain. Every other state is indeterminate.

use thiserror::Error;

use crate::closure::{ClosureError, ClosureSystem, StateSet, MAX_STATES};
use crate::lattice::{FiniteOrtholattice, LatticeError, Limits};
use crate::report::{Axiom, AxiomReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpsError {
    #[error("{0} states exceed the limit of {MAX_STATES}")]
    TooManyStates(usize),
    #[error("expected {expected} measurement entries, got {len}")]
    SemanticsLength { len: usize, expected: usize },
    #[error("expected {expected} orthogonality rows, got {len}")]
    OrthoRows { len: usize, expected: usize },
    #[error("set for `{what}` references a state outside the {size} declared")]
    UnknownState { what: String, size: usize },
    #[error("top `{property}` is not actual in state `{state}`")]
    TopNotActual { property: String, state: String },
    #[error("bottom `{property}` is actual in state `{state}`")]
    BottomActual { property: String, state: String },
    #[error("`{a}` ≤ `{b}` but `{a}` is actual and `{b}` is not in state `{state}`")]
    NotUpwardClosed { a: String, b: String, state: String },
    #[error("`{a}` and `{b}` are actual in `{state}` but their meet `{meet}` is not")]
    MeetNotActual { a: String, b: String, meet: String, state: String },
    #[error("`{property}` is both certainly yes and certainly no in state `{state}`")]
    YesAndNo { property: String, state: String },
    #[error("state `{0}` is orthogonal to itself")]
    SelfOrthogonal(String),
    #[error("orthogonality of `{p}` and `{q}` is not symmetric")]
    AsymmetricOrtho { p: String, q: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error("unknown state index {0}")]
    NoSuchState(usize),
    #[error("unknown property index {0}")]
    NoSuchProperty(usize),
}

/// A yes-no measurement described by its certain outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YesNoTest {
    pub label: String,
    pub yes: StateSet,
    pub no: StateSet,
}

impl YesNoTest {
    pub fn new(label: impl Into<String>, yes: StateSet, no: StateSet) -> Self {
        YesNoTest { label: label.into(), yes, no }
    }

    /// Same experiment with the outcomes swapped.
    pub fn inverse(&self, label: impl Into<String>) -> Self {
        YesNoTest { label: label.into(), yes: self.no, no: self.yes }
    }

    /// Product test: the experimenter freely picks one component and performs
    /// it. "Yes" is certain only if every component gives "yes" with
    /// certainty, and likewise for "no".
    pub fn product<'a>(label: impl Into<String>, parts: impl IntoIterator<Item = &'a YesNoTest>, n: usize) -> Self {
        let (yes, no) = parts
            .into_iter()
            .fold((StateSet::full(n), StateSet::full(n)), |(y, o), t| (y & t.yes, o & t.no));
        YesNoTest { label: label.into(), yes, no }
    }

    pub fn indeterminate(&self, n: usize) -> StateSet {
        (self.yes | self.no).complement(n)
    }

    pub fn is_classical(&self, n: usize) -> bool {
        self.indeterminate(n).is_empty()
    }

    /// A state where `self` is actual but `other` is not, i.e. a reason why
    /// `self` is not stronger than `other`.
    pub fn stronger_than_counterexample(&self, other: &YesNoTest) -> Option<usize> {
        self.yes.difference(other.yes).first()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePropertySystem {
    states: Vec<String>,
    lattice: FiniteOrtholattice,
    yes: Vec<StateSet>,
    no: Vec<StateSet>,
    state_ortho: Vec<StateSet>,
    tests: Vec<YesNoTest>,
    test_property: Vec<usize>,
}

impl StatePropertySystem {
    /// Validates and assembles a system. `yes[a]` / `no[a]` are the certain
    /// outcomes of property `a`; `state_ortho[p]` lists the states orthogonal
    /// to `p`.
    pub fn new(
        states: Vec<String>,
        lattice: FiniteOrtholattice,
        yes: Vec<StateSet>,
        no: Vec<StateSet>,
        state_ortho: Vec<StateSet>,
    ) -> Result<Self, SpsError> {
        let n = states.len();
        if n > MAX_STATES {
            return Err(SpsError::TooManyStates(n));
        }
        let m = lattice.len();
        for v in [&yes, &no] {
            if v.len() != m {
                return Err(SpsError::SemanticsLength { len: v.len(), expected: m });
            }
        }
        if state_ortho.len() != n {
            return Err(SpsError::OrthoRows { len: state_ortho.len(), expected: n });
        }
        let full = StateSet::full(n);
        let sys = StatePropertySystem {
            states,
            lattice,
            yes,
            no,
            state_ortho,
            tests: Vec::new(),
            test_property: Vec::new(),
        };
        for a in sys.lattice.elements() {
            for set in [sys.yes[a], sys.no[a]] {
                if !set.is_subset(full) {
                    return Err(SpsError::UnknownState { what: sys.lattice.label(a).into(), size: n });
                }
            }
            if let Some(p) = (sys.yes[a] & sys.no[a]).first() {
                return Err(SpsError::YesAndNo {
                    property: sys.lattice.label(a).into(),
                    state: sys.states[p].clone(),
                });
            }
        }
        for p in 0..n {
            let row = sys.state_ortho[p];
            if !row.is_subset(full) {
                return Err(SpsError::UnknownState { what: sys.states[p].clone(), size: n });
            }
            if row.contains(p) {
                return Err(SpsError::SelfOrthogonal(sys.states[p].clone()));
            }
            if let Some(q) = row.iter().find(|&q| !sys.state_ortho[q].contains(p)) {
                return Err(SpsError::AsymmetricOrtho { p: sys.states[p].clone(), q: sys.states[q].clone() });
            }
        }
        let (top, bottom) = (sys.lattice.top(), sys.lattice.bottom());
        if let Some(p) = full.difference(sys.yes[top]).first() {
            return Err(SpsError::TopNotActual { property: sys.lattice.label(top).into(), state: sys.states[p].clone() });
        }
        if let Some(p) = sys.yes[bottom].first() {
            return Err(SpsError::BottomActual {
                property: sys.lattice.label(bottom).into(),
                state: sys.states[p].clone(),
            });
        }
        for a in sys.lattice.elements() {
            for b in sys.lattice.up_set(a).ones() {
                if let Some(p) = sys.yes[a].difference(sys.yes[b]).first() {
                    return Err(SpsError::NotUpwardClosed {
                        a: sys.lattice.label(a).into(),
                        b: sys.lattice.label(b).into(),
                        state: sys.states[p].clone(),
                    });
                }
            }
        }
        // Conjunctions of actual properties are actual, wherever meets exist.
        for a in sys.lattice.elements() {
            for b in a + 1..m {
                let both = sys.yes[a] & sys.yes[b];
                if both.is_empty() {
                    continue;
                }
                if let Some(c) = sys.lattice.try_meet(a, b) {
                    if let Some(p) = both.difference(sys.yes[c]).first() {
                        return Err(SpsError::MeetNotActual {
                            a: sys.lattice.label(a).into(),
                            b: sys.lattice.label(b).into(),
                            meet: sys.lattice.label(c).into(),
                            state: sys.states[p].clone(),
                        });
                    }
                }
            }
        }
        Ok(sys)
    }

    /// Builds the operational property lattice of a set of yes-no tests.
    ///
    /// Properties are the actuality sets of the tests, closed under
    /// intersection (conjunction) and under the orthogonal-set map
    /// `F ↦ { s : s ⊥ f for all f ∈ F }`, ordered by inclusion. Tests with the
    /// same actuality set test the same property; the first declared label
    /// names it. A property's certain-no set is its orthogonal set.
    ///
    /// When `state_ortho` is `None`, two states are orthogonal iff some test
    /// gives "yes" with certainty on one and "no" with certainty on the other.
    pub fn from_tests(
        states: Vec<String>,
        tests: Vec<YesNoTest>,
        state_ortho: Option<Vec<StateSet>>,
        limits: &Limits,
    ) -> Result<Self, SpsError> {
        let n = states.len();
        if n > MAX_STATES {
            return Err(SpsError::TooManyStates(n));
        }
        let full = StateSet::full(n);
        for t in &tests {
            if !(t.yes | t.no).is_subset(full) {
                return Err(SpsError::UnknownState { what: t.label.clone(), size: n });
            }
        }
        let ortho = match state_ortho {
            Some(rows) => rows,
            None => derive_orthogonality(n, &tests),
        };
        if ortho.len() != n {
            return Err(SpsError::OrthoRows { len: ortho.len(), expected: n });
        }
        let perp = |f: StateSet| orthogonal_set(&ortho, n, f);
        let family = ClosureSystem::generate_with(
            n,
            std::iter::once(StateSet::EMPTY).chain(tests.iter().map(|t| t.yes)),
            limits.max_elements,
            |f| Some(perp(f)),
        )?;
        let members = family.members().to_vec();
        let labels = members
            .iter()
            .map(|&f| match tests.iter().find(|t| t.yes == f) {
                Some(t) => t.label.clone(),
                None if f.is_empty() => "0".to_string(),
                None if f == full => "1".to_string(),
                None => set_label(&states, f),
            })
            .collect();
        let lattice = lattice_of_family(labels, &members, limits, perp)?;
        let no = members.iter().map(|&f| perp(f)).collect();
        let mut sys = StatePropertySystem::new(states, lattice, members.clone(), no, ortho)?;
        sys.test_property = tests
            .iter()
            .map(|t| family.position(t.yes).expect("test actuality set is a member"))
            .collect();
        sys.tests = tests;
        Ok(sys)
    }

    /// Attaches named tests; `test_property[i]` is the lattice element tested
    /// by `tests[i]`.
    pub fn with_tests(mut self, tests: Vec<YesNoTest>, test_property: Vec<usize>) -> Self {
        debug_assert_eq!(tests.len(), test_property.len());
        self.tests = tests;
        self.test_property = test_property;
        self
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn lattice(&self) -> &FiniteOrtholattice {
        &self.lattice
    }

    pub fn tests(&self) -> &[YesNoTest] {
        &self.tests
    }

    pub fn test(&self, label: &str) -> Option<&YesNoTest> {
        self.tests.iter().find(|t| t.label == label)
    }

    /// Lattice element tested by the named test, falling back to element labels.
    pub fn property(&self, label: &str) -> Option<usize> {
        self.tests
            .iter()
            .position(|t| t.label == label)
            .map(|i| self.test_property[i])
            .or_else(|| self.lattice.index_of(label))
    }

    pub fn actual(&self, p: usize, a: usize) -> bool {
        self.yes[a].contains(p)
    }

    /// States in which `a` is actual.
    pub fn actuality(&self, a: usize) -> StateSet {
        self.yes[a]
    }

    pub fn certain_no(&self, a: usize) -> StateSet {
        self.no[a]
    }

    pub fn indeterminate(&self, a: usize) -> StateSet {
        (self.yes[a] | self.no[a]).complement(self.state_count())
    }

    pub fn orthogonal(&self, p: usize, q: usize) -> bool {
        self.state_ortho[p].contains(q)
    }

    pub fn orthogonal_row(&self, p: usize) -> StateSet {
        self.state_ortho[p]
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.state_count())
    }

    /// Set of properties actual in state `p`, as ascending element indices.
    pub fn cartan(&self, p: usize) -> Vec<usize> {
        self.lattice.elements().filter(|&a| self.actual(p, a)).collect()
    }

    /// Meet of all properties actual in `p`.
    pub fn property_state(&self, p: usize) -> usize {
        let mut set = fixedbitset::FixedBitSet::with_capacity(self.lattice.len());
        for a in self.cartan(p) {
            set.insert(a);
        }
        self.lattice
            .try_infimum(&set)
            .expect("property lattice has infima; verify the lattice first")
    }

    /// Axiom 3: distinct states have distinct sets of actual properties.
    pub fn check_state_determination(&self) -> AxiomReport {
        let n = self.state_count();
        let rows: Vec<Vec<usize>> = (0..n).map(|p| self.cartan(p)).collect();
        for p in 0..n {
            for q in p + 1..n {
                if rows[p] == rows[q] {
                    return AxiomReport::fail(Axiom::StateDetermination, Witness::SameCartan { p, q });
                }
            }
        }
        AxiomReport::pass(Axiom::StateDetermination)
    }

    /// Axiom 4: every property state is an atom, and every atom is the
    /// property state of some state.
    pub fn check_atomicity(&self) -> AxiomReport {
        let pstates: Vec<usize> = (0..self.state_count()).map(|p| self.property_state(p)).collect();
        for (state, &property) in pstates.iter().enumerate() {
            if !self.lattice.is_atom(property) {
                return AxiomReport::fail(Axiom::Atomicity, Witness::PropertyStateNotAtom { state, property });
            }
        }
        for atom in self.lattice.atoms() {
            if !pstates.contains(&atom) {
                return AxiomReport::fail(Axiom::Atomicity, Witness::OrphanAtom { atom });
            }
        }
        AxiomReport::pass(Axiom::Atomicity)
    }

    /// `r` is a superposition of `p` and `q`: every property actual in both
    /// `p` and `q` is actual in `r`.
    pub fn is_superposition(&self, r: usize, p: usize, q: usize) -> bool {
        self.lattice.elements().all(|a| !(self.actual(p, a) && self.actual(q, a)) || self.actual(r, a))
    }

    /// Every state making `a` actual is orthogonal to every state making `b`
    /// actual.
    pub fn property_orthogonal(&self, a: usize, b: usize) -> bool {
        let bs = self.yes[b];
        self.yes[a].iter().all(|p| bs.is_subset(self.state_ortho[p]))
    }

    /// `p` is orthogonal to every state making `a` actual.
    pub fn state_property_orthogonal(&self, p: usize, a: usize) -> bool {
        self.yes[a].is_subset(self.state_ortho[p])
    }

    /// Every state making `a ∨ b` actual makes `a` or `b` actual.
    pub fn detect_ssr(&self, a: usize, b: usize) -> bool {
        let j = self.lattice.join(a, b);
        self.yes[j].is_subset(self.yes[a] | self.yes[b])
    }

    /// No state leaves the outcome of `a` undetermined.
    pub fn is_classical_property(&self, a: usize) -> bool {
        self.indeterminate(a).is_empty()
    }

    pub fn classicality_report(&self, a: usize) -> AxiomReport {
        let w = self.indeterminate(a).first().map(|state| Witness::Indeterminate { property: a, state });
        AxiomReport::from_witness(Axiom::Classicality, w)
    }

    /// Smallest intersection-closed family over the states containing the
    /// generators and the full state set.
    pub fn closure_from_actuality(
        &self,
        generators: impl IntoIterator<Item = StateSet>,
        limits: &Limits,
    ) -> Result<ClosureSystem, SpsError> {
        let n = self.state_count();
        ClosureSystem::generate(n, generators, limits.max_elements).map_err(|e| match e {
            ClosureError::UnknownState { index, .. } => {
                SpsError::UnknownState { what: format!("generator {index}"), size: n }
            }
            other => SpsError::Closure(other),
        })
    }
}

/// `{ s : s ⊥ f for every f ∈ set }`
pub fn orthogonal_set(ortho: &[StateSet], n: usize, set: StateSet) -> StateSet {
    set.iter().fold(StateSet::full(n), |acc, f| acc & ortho[f])
}

/// Orthogonality witnessed by the tests themselves.
pub fn derive_orthogonality(n: usize, tests: &[YesNoTest]) -> Vec<StateSet> {
    let mut rows = vec![StateSet::EMPTY; n];
    for t in tests {
        for p in t.yes.iter() {
            for q in t.no.iter() {
                rows[p].insert(q);
                rows[q].insert(p);
            }
        }
    }
    rows
}

/// Inclusion lattice of a sorted Moore family, with an ortho candidate.
pub(crate) fn lattice_of_family(
    labels: Vec<String>,
    members: &[StateSet],
    limits: &Limits,
    ortho: impl Fn(StateSet) -> StateSet,
) -> Result<FiniteOrtholattice, LatticeError> {
    let m = members.len();
    let lattice = FiniteOrtholattice::from_fn(
        labels,
        |a, b| members[a].is_subset(members[b]),
        0,
        m.saturating_sub(1),
        limits,
    )?;
    let index = |s: StateSet| members.binary_search_by_key(&(s.len(), s.bits()), |x| (x.len(), x.bits())).ok();
    let map: Option<Vec<usize>> = members.iter().map(|&f| index(ortho(f))).collect();
    match map {
        Some(map) => lattice.with_ortho(map),
        None => Ok(lattice),
    }
}

pub(crate) fn set_label(states: &[String], f: StateSet) -> String {
    let names: Vec<&str> = f.iter().map(|i| states[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// Four-state wood system built from its float and burn tests, their inverses
/// and the two product tests.
pub fn wood() -> StatePropertySystem {
    let states: Vec<String> =
        ["dry-European", "wet-European", "dry-Ebony", "wet-Ebony"].iter().map(|s| s.to_string()).collect();
    let n = states.len();
    let s = |items: &[usize]| StateSet::from_indices(items.iter().copied());
    let float = YesNoTest::new("float", s(&[0, 1]), s(&[2, 3]));
    let burn = YesNoTest::new("burn", s(&[0, 2]), s(&[1, 3]));
    let sink = float.inverse("sink");
    let fireproof = burn.inverse("fireproof");
    let float_and_burn = YesNoTest::product("float∧burn", [&float, &burn], n);
    let sink_and_fireproof = YesNoTest::product("sink∧fireproof", [&sink, &fireproof], n);
    let tests = vec![
        YesNoTest::new("0", StateSet::EMPTY, StateSet::full(n)),
        YesNoTest::new("1", StateSet::full(n), StateSet::EMPTY),
        float,
        burn,
        sink,
        fireproof,
        float_and_burn,
        sink_and_fireproof,
    ];
    StatePropertySystem::from_tests(states, tests, None, &Limits::default()).expect("wood system")
}
