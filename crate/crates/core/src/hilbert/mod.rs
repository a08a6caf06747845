//! Finite-dimensional complex Hilbert spaces: projectors, subspace lattices,
//! the Born rule and state-property systems sampled from vectors.

pub mod matrix;
pub mod scalar;
pub mod subspace;

use thiserror::Error;

use crate::closure::StateSet;
use crate::lattice::{FiniteOrtholattice, LatticeError, Limits};
use crate::sps::{SpsError, StatePropertySystem, YesNoTest};

pub use matrix::{inner, ComplexMatrix};
pub use scalar::{Exact, Scalar, EPS};
pub use subspace::{leq_projector, ortho_projector, Subspace};

/// Largest ambient dimension accepted by the lattice generator.
pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not an orthogonal projector")]
    NotProjector,
    #[error("vector is not normalized")]
    NotNormalized,
    #[error("the zero vector does not represent a state")]
    ZeroVector,
    #[error("ambient dimension {0} exceeds {MAX_DIMENSION}")]
    DimensionTooLarge(usize),
    #[error("subspace lattice grew past {cap} elements")]
    Explosion { cap: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Sps(#[from] SpsError),
}

/// `A ⊗ B`
pub fn tensor<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a.kron(b)
}

/// `‖Pψ‖² = ⟨ψ, Pψ⟩` for a normalized `ψ`.
pub fn born_probability<T: Scalar>(p: &ComplexMatrix<T>, psi: &[T]) -> Result<T, HilbertError> {
    if !matrix::norm_sqr(psi).near(&T::one()) {
        return Err(HilbertError::NotNormalized);
    }
    born_ratio(p, psi)
}

/// `⟨ψ, Pψ⟩ / ⟨ψ, ψ⟩`: the Born probability of the ray through `ψ`. Keeps
/// `√2`-type normalizations out of exact arithmetic.
pub fn born_ratio<T: Scalar>(p: &ComplexMatrix<T>, psi: &[T]) -> Result<T, HilbertError> {
    if p.cols() != psi.len() {
        return Err(HilbertError::DimensionMismatch { expected: p.cols(), got: psi.len() });
    }
    let n = matrix::norm_sqr(psi);
    if n.vanishes() {
        return Err(HilbertError::ZeroVector);
    }
    Ok(inner(psi, &p.apply(psi)) / n)
}

/// A finite ortholattice of subspaces with the subspace behind each element.
#[derive(Debug, Clone)]
pub struct SubspaceLattice<T> {
    pub lattice: FiniteOrtholattice,
    pub subspaces: Vec<Subspace<T>>,
}

impl<T: Scalar> SubspaceLattice<T> {
    pub fn position(&self, s: &Subspace<T>) -> Option<usize> {
        self.subspaces.iter().position(|x| x == s)
    }
}

/// Closes `{0, full space} ∪ seeds` under meet, join and orthocomplement.
///
/// Elements appear in discovery order: `0`, `1`, the seeds, then derived
/// subspaces labelled by the expression that first produced them. A seed equal
/// to an earlier element is merged into it.
pub fn generate_subspace_lattice<T: Scalar>(
    dim: usize,
    seeds: &[(String, Subspace<T>)],
    limits: &Limits,
) -> Result<SubspaceLattice<T>, HilbertError> {
    if dim > MAX_DIMENSION {
        return Err(HilbertError::DimensionTooLarge(dim));
    }
    for (_, s) in seeds {
        if s.dim() != dim {
            return Err(HilbertError::DimensionMismatch { expected: dim, got: s.dim() });
        }
        if !s.projector().is_projector() {
            return Err(HilbertError::NotProjector);
        }
    }
    let cap = limits.max_elements;
    let mut labels: Vec<String> = Vec::new();
    let mut subs: Vec<Subspace<T>> = Vec::new();
    let add = |label: String, s: Subspace<T>, labels: &mut Vec<String>, subs: &mut Vec<Subspace<T>>| {
        if subs.contains(&s) {
            return Ok(());
        }
        if subs.len() == cap {
            return Err(HilbertError::Explosion { cap });
        }
        labels.push(label);
        subs.push(s);
        Ok(())
    };
    add("0".into(), Subspace::zero(dim), &mut labels, &mut subs)?;
    add("1".into(), Subspace::full(dim), &mut labels, &mut subs)?;
    for (label, s) in seeds {
        add(label.clone(), s.clone(), &mut labels, &mut subs)?;
    }
    let mut done = 0;
    while done < subs.len() {
        let x = done;
        done += 1;
        add(format!("{}'", labels[x]), subs[x].ortho(), &mut labels, &mut subs)?;
        let mut y = 0;
        while y < done {
            let (sx, sy) = (subs[x].clone(), subs[y].clone());
            let (lx, ly) = (labels[x].clone(), labels[y].clone());
            add(format!("({ly}∧{lx})"), sy.meet(&sx)?, &mut labels, &mut subs)?;
            add(format!("({ly}∨{lx})"), sy.join(&sx)?, &mut labels, &mut subs)?;
            y += 1;
        }
    }
    let n = subs.len();
    let mut leq = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            leq[a][b] = subs[a].leq(&subs[b])?;
        }
    }
    let ortho: Vec<usize> = subs
        .iter()
        .map(|s| subs.iter().position(|t| *t == s.ortho()).expect("closed under ortho"))
        .collect();
    let lattice = FiniteOrtholattice::with_limits(labels, &leq, 0, 1, limits)?.with_ortho(ortho)?;
    Ok(SubspaceLattice { lattice, subspaces: subs })
}

/// State-property system sampled from rays.
///
/// States are the given directions (any non-zero representative). The
/// property lattice is generated from the given subspaces. A property is
/// actual when its Born probability is 1, certainly absent when it is 0, and
/// two states are orthogonal when their inner product vanishes. Each seed
/// subspace becomes a named test.
pub fn sample_sps<T: Scalar>(
    dim: usize,
    directions: &[(String, Vec<T>)],
    properties: &[(String, Subspace<T>)],
    limits: &Limits,
) -> Result<(StatePropertySystem, SubspaceLattice<T>), HilbertError> {
    for (_, d) in directions {
        if d.len() != dim {
            return Err(HilbertError::DimensionMismatch { expected: dim, got: d.len() });
        }
        if matrix::is_zero_vector(d) {
            return Err(HilbertError::ZeroVector);
        }
    }
    let sl = generate_subspace_lattice(dim, properties, limits)?;
    let prob = |s: &Subspace<T>, d: &[T]| born_ratio(s.projector(), d);
    let mut yes = Vec::new();
    let mut no = Vec::new();
    for s in &sl.subspaces {
        let (mut y, mut o) = (StateSet::EMPTY, StateSet::EMPTY);
        for (i, (_, d)) in directions.iter().enumerate() {
            let p = prob(s, d)?;
            if p.near(&T::one()) {
                y.insert(i);
            } else if p.vanishes() {
                o.insert(i);
            }
        }
        yes.push(y);
        no.push(o);
    }
    let state_ortho = directions
        .iter()
        .map(|(_, p)| {
            directions.iter().enumerate().filter(|(_, (_, q))| inner(p, q).vanishes()).map(|(i, _)| i).collect()
        })
        .collect();
    let states = directions.iter().map(|(l, _)| l.clone()).collect();
    let sys = StatePropertySystem::new(states, sl.lattice.clone(), yes, no, state_ortho)?;
    let mut tests = Vec::new();
    let mut at = Vec::new();
    for (label, s) in properties {
        let a = sl.position(s).expect("seed is an element");
        tests.push(YesNoTest::new(label.clone(), sys.actuality(a), sys.certain_no(a)));
        at.push(a);
    }
    Ok((sys.with_tests(tests, at), sl))
}
