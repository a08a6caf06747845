//! Axiom verdicts and the witnesses that back a failure.
//!
//! A report fails exactly when it carries a witness, so the verdict is derived
//! from the witness rather than stored alongside it.

use std::fmt;

use serde::Serialize;

/// Which condition a report speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Completeness,
    Orthocomplementation,
    StateDetermination,
    Atomicity,
    CoveringLaw,
    WeakModularity,
    Ssr,
    Classicality,
    BooleanSublattice,
    ThreePointsPerLine,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Completeness => "completeness",
            Axiom::Orthocomplementation => "orthocomplementation",
            Axiom::StateDetermination => "state-determination",
            Axiom::Atomicity => "atomicity",
            Axiom::CoveringLaw => "covering-law",
            Axiom::WeakModularity => "weak-modularity",
            Axiom::Ssr => "ssr",
            Axiom::Classicality => "classicality",
            Axiom::BooleanSublattice => "boolean-sublattice",
            Axiom::ThreePointsPerLine => "three-points-per-line",
        }
    }

    /// Position in the standard list of seven axioms, where there is one.
    pub fn number(self) -> Option<u8> {
        match self {
            Axiom::Completeness => Some(1),
            Axiom::Orthocomplementation => Some(2),
            Axiom::StateDetermination => Some(3),
            Axiom::Atomicity => Some(4),
            Axiom::CoveringLaw => Some(5),
            Axiom::WeakModularity => Some(6),
            _ => None,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A reference inside a witness: either a lattice element or a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ref {
    Element(usize),
    State(usize),
}

/// A concrete counterexample. Element fields index the lattice, `state`
/// fields index the states of a state-property system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    NotReflexive { a: usize },
    NotAntisymmetric { a: usize, b: usize },
    NotTransitive { a: usize, b: usize, c: usize },
    BottomNotLeast { bottom: usize, x: usize },
    TopNotGreatest { top: usize, x: usize },
    NoMeet { a: usize, b: usize },
    NoJoin { a: usize, b: usize },
    OrthoNotInvolutive { a: usize },
    OrthoNotAntitone { a: usize, b: usize },
    OrthoMeetNotBottom { a: usize },
    /// `x` is non-zero but no atom lies below it.
    NotAtomic { x: usize },
    /// `atom ∧ b = 0` and `b < c < atom ∨ b`.
    CoveringFails { atom: usize, b: usize, c: usize },
    /// `a ≤ b` but `(a ∨ b') ∧ b ≠ a`.
    NotWeaklyModular { a: usize, b: usize },
    /// In the sublattice generated by `a ≤ b`: `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    NotBoolean { a: usize, b: usize, x: usize, y: usize, z: usize },
    SameCartan { p: usize, q: usize },
    PropertyStateNotAtom { state: usize, property: usize },
    OrphanAtom { atom: usize },
    /// Distinct atoms separated by a superselection rule that are not orthogonal.
    SsrNonOrthogonal { a: usize, b: usize },
    /// The join of two non-orthogonal atoms contains no third atom.
    TwoPointPlane { a: usize, b: usize, join: usize },
    /// `property` is neither certainly yes nor certainly no at `state`.
    Indeterminate { property: usize, state: usize },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::NotReflexive { .. } => "not-reflexive",
            Witness::NotAntisymmetric { .. } => "not-antisymmetric",
            Witness::NotTransitive { .. } => "not-transitive",
            Witness::BottomNotLeast { .. } => "bottom-not-least",
            Witness::TopNotGreatest { .. } => "top-not-greatest",
            Witness::NoMeet { .. } => "no-meet",
            Witness::NoJoin { .. } => "no-join",
            Witness::OrthoNotInvolutive { .. } => "ortho-not-involutive",
            Witness::OrthoNotAntitone { .. } => "ortho-not-antitone",
            Witness::OrthoMeetNotBottom { .. } => "ortho-meet-not-bottom",
            Witness::NotAtomic { .. } => "not-atomic",
            Witness::CoveringFails { .. } => "covering-fails",
            Witness::NotWeaklyModular { .. } => "not-weakly-modular",
            Witness::NotBoolean { .. } => "not-boolean",
            Witness::SameCartan { .. } => "same-cartan",
            Witness::PropertyStateNotAtom { .. } => "property-state-not-atom",
            Witness::OrphanAtom { .. } => "orphan-atom",
            Witness::SsrNonOrthogonal { .. } => "ssr-non-orthogonal",
            Witness::TwoPointPlane { .. } => "two-point-plane",
            Witness::Indeterminate { .. } => "indeterminate",
        }
    }

    /// Named components in a fixed order, used for rendering.
    pub fn parts(&self) -> Vec<(&'static str, Ref)> {
        use Ref::{Element as E, State as S};
        match *self {
            Witness::NotReflexive { a } => vec![("a", E(a))],
            Witness::NotAntisymmetric { a, b } => vec![("a", E(a)), ("b", E(b))],
            Witness::NotTransitive { a, b, c } => vec![("a", E(a)), ("b", E(b)), ("c", E(c))],
            Witness::BottomNotLeast { bottom, x } => vec![("bottom", E(bottom)), ("x", E(x))],
            Witness::TopNotGreatest { top, x } => vec![("top", E(top)), ("x", E(x))],
            Witness::NoMeet { a, b } | Witness::NoJoin { a, b } => {
                vec![("a", E(a)), ("b", E(b))]
            }
            Witness::OrthoNotInvolutive { a } | Witness::OrthoMeetNotBottom { a } => {
                vec![("a", E(a))]
            }
            Witness::OrthoNotAntitone { a, b } => vec![("a", E(a)), ("b", E(b))],
            Witness::NotAtomic { x } => vec![("x", E(x))],
            Witness::CoveringFails { atom, b, c } => {
                vec![("atom", E(atom)), ("b", E(b)), ("c", E(c))]
            }
            Witness::NotWeaklyModular { a, b } => vec![("a", E(a)), ("b", E(b))],
            Witness::NotBoolean { a, b, x, y, z } => vec![
                ("a", E(a)),
                ("b", E(b)),
                ("x", E(x)),
                ("y", E(y)),
                ("z", E(z)),
            ],
            Witness::SameCartan { p, q } => vec![("p", S(p)), ("q", S(q))],
            Witness::PropertyStateNotAtom { state, property } => {
                vec![("state", S(state)), ("property", E(property))]
            }
            Witness::OrphanAtom { atom } => vec![("atom", E(atom))],
            Witness::SsrNonOrthogonal { a, b } => vec![("a", E(a)), ("b", E(b))],
            Witness::TwoPointPlane { a, b, join } => {
                vec![("a", E(a)), ("b", E(b)), ("join", E(join))]
            }
            Witness::Indeterminate { property, state } => {
                vec![("property", E(property)), ("state", S(state))]
            }
        }
    }
}

/// Verdict for one axiom on one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl AxiomReport {
    pub fn pass(axiom: Axiom) -> Self {
        AxiomReport { axiom, witness: None, note: None }
    }

    pub fn fail(axiom: Axiom, witness: Witness) -> Self {
        AxiomReport { axiom, witness: Some(witness), note: None }
    }

    pub fn from_witness(axiom: Axiom, witness: Option<Witness>) -> Self {
        AxiomReport { axiom, witness, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn verdict(&self) -> Verdict {
        if self.witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// One line of a full report: either a checked verdict or the reason the
/// checker could not run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Checked(AxiomReport),
    NotApplicable { axiom: Axiom, reason: String },
}

impl Outcome {
    pub fn axiom(&self) -> Axiom {
        match self {
            Outcome::Checked(r) => r.axiom,
            Outcome::NotApplicable { axiom, .. } => *axiom,
        }
    }

    pub fn report(&self) -> Option<&AxiomReport> {
        match self {
            Outcome::Checked(r) => Some(r),
            Outcome::NotApplicable { .. } => None,
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self, Outcome::Checked(r) if !r.passed())
    }

    /// `Some(true)` for pass, `Some(false)` for fail, `None` when not run.
    pub fn passed(&self) -> Option<bool> {
        self.report().map(AxiomReport::passed)
    }
}

/// Ordered list of outcomes, one per checker.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FullReport {
    pub outcomes: Vec<Outcome>,
}

impl FullReport {
    pub fn get(&self, axiom: Axiom) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.axiom() == axiom)
    }

    /// Pass/fail of one axiom; `None` if absent or not applicable.
    pub fn passed(&self, axiom: Axiom) -> Option<bool> {
        self.get(axiom).and_then(Outcome::passed)
    }

    pub fn any_failed(&self) -> bool {
        self.outcomes.iter().any(Outcome::failed)
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.outcomes.iter().filter(|o| o.failed()).map(Outcome::axiom).collect()
    }

    pub fn reports(&self) -> impl Iterator<Item = &AxiomReport> {
        self.outcomes.iter().filter_map(Outcome::report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_witness() {
        let r = AxiomReport::pass(Axiom::CoveringLaw);
        assert_eq!(r.verdict(), Verdict::Pass);
        let r = AxiomReport::fail(Axiom::CoveringLaw, Witness::CoveringFails { atom: 1, b: 2, c: 3 });
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.witness.as_ref().unwrap().parts().len(), 3);
    }

    #[test]
    fn axiom_numbers() {
        assert_eq!(Axiom::Completeness.number(), Some(1));
        assert_eq!(Axiom::WeakModularity.number(), Some(6));
        assert_eq!(Axiom::Ssr.number(), None);
        assert_eq!(Axiom::CoveringLaw.to_string(), "covering-law");
    }
}
