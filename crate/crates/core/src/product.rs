//! Separated product of two state-property systems.
//!
//! States are pairs `(p, q)`, indexed `p·n2 + q`. Properties are generated
//! from joint tests of the two separate sub-systems: rectangles `A×B` (both
//! component tests answer yes) and crosses `(A×Σ2) ∪ (Σ1×B)` (at least one
//! answers yes), where `A`, `B` range over factor actuality sets. The family
//! is then closed under intersection and the orthogonal-set map.

use thiserror::Error;

use crate::axioms::{full_report_sps, ssr_diagnostic, three_points_per_line_check};
use crate::closure::{ClosureError, ClosureSystem, StateSet, MAX_STATES};
use crate::lattice::{LatticeError, Limits};
use crate::report::{Axiom, FullReport, Outcome};
use crate::sps::{lattice_of_family, orthogonal_set, set_label, SpsError, StatePropertySystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("{0} product states exceed the limit of {MAX_STATES}")]
    TooManyStates(usize),
    #[error("no state ({p}, {q}) in a {n1}×{n2} product")]
    UnknownState { p: usize, q: usize, n1: usize, n2: usize },
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Sps(#[from] SpsError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProductOptions {
    /// Also generate from the factor certain-no sets, i.e. include the
    /// inverses of the rectangle and cross tests.
    pub extended_generators: bool,
}

#[derive(Debug, Clone)]
pub struct SeparatedProduct {
    n1: usize,
    n2: usize,
    family: ClosureSystem,
    system: StatePropertySystem,
}

/// Join of two product atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneInfo {
    pub element: usize,
    pub states: StateSet,
    /// Number of atoms of the product lattice below the join.
    pub atoms_below: usize,
    /// Two distinct atoms whose join holds no third one.
    pub two_point: bool,
    pub orthogonal: bool,
}

fn rectangle(a: StateSet, b: StateSet, n2: usize) -> StateSet {
    a.iter().flat_map(|p| b.iter().map(move |q| p * n2 + q)).collect()
}

fn cross(a: StateSet, b: StateSet, n1: usize, n2: usize) -> StateSet {
    rectangle(a, StateSet::full(n2), n2) | rectangle(StateSet::full(n1), b, n2)
}

/// `((A×Σ2)∪(Σ1×B)) ∩ ((C×Σ2)∪(Σ1×D)) = (A∩C)×Σ2 ∪ A×D ∪ C×B ∪ Σ1×(B∩D)`,
/// evaluated from the right-hand side.
pub fn cross_intersection(a: StateSet, b: StateSet, c: StateSet, d: StateSet, n1: usize, n2: usize) -> StateSet {
    let (s1, s2) = (StateSet::full(n1), StateSet::full(n2));
    rectangle(a & c, s2, n2) | rectangle(a, d, n2) | rectangle(c, b, n2) | rectangle(s1, b & d, n2)
}

/// Distinct factor sets with the label of the first element producing them.
fn factor_sets(s: &StatePropertySystem, extended: bool) -> Vec<(String, StateSet)> {
    let l = s.lattice();
    let mut out: Vec<(String, StateSet)> = Vec::new();
    let mut push = |label: String, set: StateSet| {
        if !out.iter().any(|(_, x)| *x == set) {
            out.push((label, set));
        }
    };
    for a in l.elements() {
        push(l.label(a).to_string(), s.actuality(a));
    }
    if extended {
        for a in l.elements() {
            push(format!("not {}", l.label(a)), s.certain_no(a));
        }
    }
    out
}

pub fn build_separated_product(
    s1: &StatePropertySystem,
    s2: &StatePropertySystem,
    options: ProductOptions,
    limits: &Limits,
) -> Result<SeparatedProduct, ProductError> {
    let (n1, n2) = (s1.state_count(), s2.state_count());
    let n = n1 * n2;
    if n > MAX_STATES {
        return Err(ProductError::TooManyStates(n));
    }
    let states: Vec<String> = (0..n).map(|k| format!("({},{})", s1.states()[k / n2], s2.states()[k % n2])).collect();
    let ortho: Vec<StateSet> = (0..n)
        .map(|k| {
            let (p, q) = (k / n2, k % n2);
            (0..n).filter(|&m| s1.orthogonal(p, m / n2) || s2.orthogonal(q, m % n2)).collect()
        })
        .collect();

    let (f1, f2) = (factor_sets(s1, options.extended_generators), factor_sets(s2, options.extended_generators));
    let mut gens: Vec<(String, StateSet)> = vec![("0".into(), StateSet::EMPTY)];
    for (la, a) in &f1 {
        for (lb, b) in &f2 {
            gens.push((format!("{la}×{lb}"), rectangle(*a, *b, n2)));
        }
    }
    for (la, a) in &f1 {
        for (lb, b) in &f2 {
            gens.push((format!("{la}+{lb}"), cross(*a, *b, n1, n2)));
        }
    }
    // Bounded by the power set of the product states.
    let cap = if n >= 63 { limits.max_elements } else { limits.max_elements.min(1usize << n) };
    let perp = |f: StateSet| orthogonal_set(&ortho, n, f);
    let family = ClosureSystem::generate_with(n, gens.iter().map(|g| g.1), cap, |f| Some(perp(f)))?;
    let members = family.members().to_vec();
    let full = StateSet::full(n);
    let labels: Vec<String> = members
        .iter()
        .map(|&f| {
            if f.is_empty() {
                "0".to_string()
            } else if f == full {
                "1".to_string()
            } else if f.len() <= 2 {
                set_label(&states, f)
            } else {
                gens.iter().find(|g| g.1 == f).map_or_else(|| set_label(&states, f), |g| g.0.clone())
            }
        })
        .collect();
    let lattice = lattice_of_family(labels, &members, limits, perp)?;
    let no = members.iter().map(|&f| perp(f)).collect();
    let system = StatePropertySystem::new(states, lattice, members, no, ortho)?;
    Ok(SeparatedProduct { n1, n2, family, system })
}

impl SeparatedProduct {
    pub fn system(&self) -> &StatePropertySystem {
        &self.system
    }

    pub fn family(&self) -> &ClosureSystem {
        &self.family
    }

    pub fn factor_sizes(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn state(&self, p: usize, q: usize) -> Result<usize, ProductError> {
        if p < self.n1 && q < self.n2 {
            Ok(p * self.n2 + q)
        } else {
            Err(ProductError::UnknownState { p, q, n1: self.n1, n2: self.n2 })
        }
    }

    /// Lattice element whose actuality set is `set`.
    pub fn element(&self, set: StateSet) -> Option<usize> {
        self.family.position(set)
    }

    /// Smallest property actual at the state `k`.
    pub fn atom_of(&self, k: usize) -> usize {
        self.system.property_state(k)
    }

    /// Join of the property states of `(p1,q1)` and `(p2,q2)`.
    pub fn join_of_product_atoms(&self, s: (usize, usize), t: (usize, usize)) -> Result<PlaneInfo, ProductError> {
        let (a, b) = (self.atom_of(self.state(s.0, s.1)?), self.atom_of(self.state(t.0, t.1)?));
        let l = self.system.lattice();
        let element = l.join(a, b);
        let atoms_below = l.atoms().into_iter().filter(|&x| l.leq(x, element)).count();
        Ok(PlaneInfo {
            element,
            states: self.system.actuality(element),
            atoms_below,
            two_point: a != b && atoms_below == 2,
            orthogonal: self.system.property_orthogonal(a, b),
        })
    }

    /// Axioms 1 to 6, the superselection diagnostic and the three-points-per-line
    /// check.
    pub fn axiom_report(&self) -> FullReport {
        separated_axiom_report(self)
    }
}

pub fn separated_axiom_report(sp: &SeparatedProduct) -> FullReport {
    let mut report = full_report_sps(&sp.system);
    let push = |r: &mut FullReport, axiom: Axiom, res: Result<_, crate::axioms::CheckError>| {
        r.outcomes.push(match res {
            Ok(x) => Outcome::Checked(x),
            Err(e) => Outcome::NotApplicable { axiom, reason: e.to_string() },
        });
    };
    push(&mut report, Axiom::Ssr, ssr_diagnostic(&sp.system));
    push(&mut report, Axiom::ThreePointsPerLine, three_points_per_line_check(sp.system.lattice()));
    report
}
