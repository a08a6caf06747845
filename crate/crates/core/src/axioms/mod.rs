//! Order-theoretic axiom checkers and the full-report runners.
//!
//! Every checker is an exhaustive scan that stops at the lexicographically
//! smallest violating index tuple, so reports are deterministic.

mod replay;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::lattice::FiniteOrtholattice;
use crate::report::{Axiom, AxiomReport, FullReport, Outcome, Witness};
use crate::sps::StatePropertySystem;

pub use replay::replay;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("no ortho map is attached to this lattice")]
    MissingOrtho,
    #[error("the order is not a lattice")]
    NotALattice,
    #[error("the ortho map is not an orthocomplementation")]
    OrthoInvalid,
    #[error("element {b} is not above element {a}")]
    NotComparable { a: usize, b: usize },
}

fn ortho_map(l: &FiniteOrtholattice) -> Result<&[usize], CheckError> {
    l.ortho().ok_or(CheckError::MissingOrtho)
}

fn require_lattice(l: &FiniteOrtholattice) -> Result<(), CheckError> {
    if l.verify().passed() {
        Ok(())
    } else {
        Err(CheckError::NotALattice)
    }
}

/// Axiom 2: `a ∧ a' = 0`, `a'' = a`, and `a ≤ b ⇒ b' ≤ a'`.
///
/// The three laws are swept in that order; each sweep reports its smallest
/// violation.
pub fn check_orthocomplementation(l: &FiniteOrtholattice) -> Result<AxiomReport, CheckError> {
    let o = ortho_map(l)?;
    require_lattice(l)?;
    let w = orthocomplement_violation(l, o);
    Ok(AxiomReport::from_witness(Axiom::Orthocomplementation, w))
}

fn orthocomplement_violation(l: &FiniteOrtholattice, o: &[usize]) -> Option<Witness> {
    if let Some(a) = l.elements().find(|&a| l.meet(a, o[a]) != l.bottom()) {
        return Some(Witness::OrthoMeetNotBottom { a });
    }
    if let Some(a) = l.elements().find(|&a| o[o[a]] != a) {
        return Some(Witness::OrthoNotInvolutive { a });
    }
    for a in l.elements() {
        if let Some(b) = l.up_set(a).ones().find(|&b| !l.leq(o[b], o[a])) {
            return Some(Witness::OrthoNotAntitone { a, b });
        }
    }
    None
}

/// Lattice-level atomicity: every non-zero element lies above some atom.
pub fn check_lattice_atomicity(l: &FiniteOrtholattice) -> Result<AxiomReport, CheckError> {
    require_lattice(l)?;
    let atoms = l.atoms();
    let w = l
        .elements()
        .find(|&x| x != l.bottom() && !atoms.iter().any(|&a| l.leq(a, x)))
        .map(|x| Witness::NotAtomic { x });
    Ok(AxiomReport::from_witness(Axiom::Atomicity, w))
}

/// Axiom 5: for every atom `a` and element `b` with `a ∧ b = 0`, `a ∨ b`
/// covers `b`.
pub fn check_covering_law(l: &FiniteOrtholattice) -> Result<AxiomReport, CheckError> {
    require_lattice(l)?;
    let w = covering_violations(l, true).into_iter().next();
    Ok(AxiomReport::from_witness(Axiom::CoveringLaw, w))
}

/// Every covering-law violation `(atom, b, c)`, in lexicographic order.
pub fn covering_law_witnesses(l: &FiniteOrtholattice) -> Result<Vec<Witness>, CheckError> {
    require_lattice(l)?;
    Ok(covering_violations(l, false))
}

fn covering_violations(l: &FiniteOrtholattice, first_only: bool) -> Vec<Witness> {
    let mut out = Vec::new();
    for atom in l.atoms() {
        for b in l.elements() {
            if l.meet(atom, b) != l.bottom() {
                continue;
            }
            let j = l.join(atom, b);
            for c in l.interval(b, j).ones().filter(|&c| c != b && c != j) {
                out.push(Witness::CoveringFails { atom, b, c });
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

/// Axiom 6: `a ≤ b ⇒ (a ∨ b') ∧ b = a`.
pub fn check_weak_modularity(l: &FiniteOrtholattice) -> Result<AxiomReport, CheckError> {
    let o = ortho_map(l)?;
    require_lattice(l)?;
    let w = l.elements().find_map(|a| {
        l.up_set(a)
            .ones()
            .find(|&b| l.meet(l.join(a, o[b]), b) != a)
            .map(|b| Witness::NotWeaklyModular { a, b })
    });
    Ok(AxiomReport::from_witness(Axiom::WeakModularity, w))
}

/// Elements generated from `{a, b}` by meet, join and ortho, with 0 and 1.
pub fn generated_sublattice(l: &FiniteOrtholattice, a: usize, b: usize) -> Result<FixedBitSet, CheckError> {
    let o = ortho_map(l)?;
    require_lattice(l)?;
    let mut set = FixedBitSet::with_capacity(l.len());
    let mut list = Vec::new();
    for x in [l.bottom(), l.top(), a, b] {
        if !set.put(x) {
            list.push(x);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        i += 1;
        let mut fresh = vec![o[x]];
        for &y in &list {
            fresh.push(l.meet(x, y));
            fresh.push(l.join(x, y));
        }
        for z in fresh {
            if !set.put(z) {
                list.push(z);
            }
        }
    }
    Ok(set)
}

/// For `a ≤ b`: the sublattice generated by `a` and `b` is distributive.
///
/// Requires a valid orthocomplementation, so the generated sublattice is
/// orthocomplemented and distributivity makes it Boolean.
pub fn check_boolean_sublattice(l: &FiniteOrtholattice, a: usize, b: usize) -> Result<AxiomReport, CheckError> {
    ortho_map(l)?;
    require_lattice(l)?;
    if !l.leq(a, b) {
        return Err(CheckError::NotComparable { a, b });
    }
    if !check_orthocomplementation(l)?.passed() {
        return Err(CheckError::OrthoInvalid);
    }
    let sub: Vec<usize> = generated_sublattice(l, a, b)?.ones().collect();
    for &x in &sub {
        for &y in &sub {
            for &z in &sub {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Ok(AxiomReport::fail(Axiom::BooleanSublattice, Witness::NotBoolean { a, b, x, y, z }));
                }
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::BooleanSublattice))
}

/// Two atoms are orthogonal when `a ≤ b'`.
pub fn atoms_orthogonal(l: &FiniteOrtholattice, a: usize, b: usize) -> bool {
    l.complement(b).is_some_and(|bc| l.leq(a, bc))
}

/// Joins of two distinct atoms that contain no third atom.
///
/// Returns `(a, b, a ∨ b)` for every such pair with `a < b`.
pub fn two_point_planes(l: &FiniteOrtholattice) -> Result<Vec<(usize, usize, usize)>, CheckError> {
    require_lattice(l)?;
    let atoms = l.atoms();
    let mut out = Vec::new();
    for (i, &a) in atoms.iter().enumerate() {
        for &b in &atoms[i + 1..] {
            let j = l.join(a, b);
            if atoms.iter().filter(|&&c| l.leq(c, j)).count() == 2 {
                out.push((a, b, j));
            }
        }
    }
    Ok(out)
}

/// Every line through two non-orthogonal atoms carries a third atom.
///
/// Orthogonal two-point planes are allowed; the note lists every two-point
/// plane found.
pub fn three_points_per_line_check(l: &FiniteOrtholattice) -> Result<AxiomReport, CheckError> {
    let planes = two_point_planes(l)?;
    let w = planes
        .iter()
        .find(|&&(a, b, _)| !atoms_orthogonal(l, a, b))
        .map(|&(a, b, join)| Witness::TwoPointPlane { a, b, join });
    let mut report = AxiomReport::from_witness(Axiom::ThreePointsPerLine, w);
    if !planes.is_empty() {
        let list: Vec<String> = planes
            .iter()
            .map(|&(a, b, _)| {
                let tag = if atoms_orthogonal(l, a, b) { "orthogonal" } else { "non-orthogonal" };
                format!("{} ∨ {} ({tag})", l.label(a), l.label(b))
            })
            .collect();
        let bad = list.iter().filter(|x| x.ends_with("(non-orthogonal)")).count();
        report = report.with_note(format!("{} two-point planes, {bad} non-orthogonal:\n{}", list.len(), list.join("\n")));
    }
    Ok(report)
}

/// Distinct atoms `a < b` separated by a superselection rule.
pub fn ssr_atom_pairs(s: &StatePropertySystem) -> Vec<(usize, usize)> {
    let atoms = s.lattice().atoms();
    let mut out = Vec::new();
    for (i, &a) in atoms.iter().enumerate() {
        for &b in &atoms[i + 1..] {
            if s.detect_ssr(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Fails when two ssr-separated atoms are not orthogonal properties.
pub fn ssr_diagnostic(s: &StatePropertySystem) -> Result<AxiomReport, CheckError> {
    require_lattice(s.lattice())?;
    let w = ssr_atom_pairs(s)
        .into_iter()
        .find(|&(a, b)| !s.property_orthogonal(a, b))
        .map(|(a, b)| Witness::SsrNonOrthogonal { a, b });
    Ok(AxiomReport::from_witness(Axiom::Ssr, w))
}

fn outcome(axiom: Axiom, r: Result<AxiomReport, CheckError>) -> Outcome {
    match r {
        Ok(report) => Outcome::Checked(report),
        Err(e) => Outcome::NotApplicable { axiom, reason: e.to_string() },
    }
}

/// Axioms 1, 2, 4, 5 and 6 on a bare lattice. Atomicity is the lattice-level
/// form; state determination needs states and is omitted.
pub fn full_report(l: &FiniteOrtholattice) -> FullReport {
    FullReport {
        outcomes: vec![
            Outcome::Checked(l.verify()),
            outcome(Axiom::Orthocomplementation, check_orthocomplementation(l)),
            outcome(Axiom::Atomicity, check_lattice_atomicity(l)),
            outcome(Axiom::CoveringLaw, check_covering_law(l)),
            outcome(Axiom::WeakModularity, check_weak_modularity(l)),
        ],
    }
}

/// Axioms 1 to 6 on a state-property system.
pub fn full_report_sps(s: &StatePropertySystem) -> FullReport {
    let l = s.lattice();
    let atomicity = require_lattice(l).map(|_| s.check_atomicity());
    FullReport {
        outcomes: vec![
            Outcome::Checked(l.verify()),
            outcome(Axiom::Orthocomplementation, check_orthocomplementation(l)),
            Outcome::Checked(s.check_state_determination()),
            outcome(Axiom::Atomicity, atomicity),
            outcome(Axiom::CoveringLaw, check_covering_law(l)),
            outcome(Axiom::WeakModularity, check_weak_modularity(l)),
        ],
    }
}
