//! Re-evaluation of a witness against the defining condition it violates.

use crate::lattice::FiniteOrtholattice;
use crate::report::Witness;
use crate::sps::StatePropertySystem;

/// True iff `w` really exhibits the violation it names.
///
/// State-level witnesses need `sps`; without it they do not replay. Each arm
/// restates the defining formula directly on the order relation instead of
/// calling the checker that produced the witness.
pub fn replay(w: &Witness, l: &FiniteOrtholattice, sps: Option<&StatePropertySystem>) -> bool {
    let n = l.len();
    let ok = |xs: &[usize]| xs.iter().all(|&x| x < n);
    let o = |a: usize| l.complement(a);
    let meet = |a: usize, b: usize| l.try_meet(a, b);
    let join = |a: usize, b: usize| l.try_join(a, b);
    match *w {
        Witness::NotReflexive { a } => ok(&[a]) && !l.leq(a, a),
        Witness::NotAntisymmetric { a, b } => ok(&[a, b]) && a != b && l.leq(a, b) && l.leq(b, a),
        Witness::NotTransitive { a, b, c } => ok(&[a, b, c]) && l.leq(a, b) && l.leq(b, c) && !l.leq(a, c),
        Witness::BottomNotLeast { bottom, x } => ok(&[bottom, x]) && bottom == l.bottom() && !l.leq(bottom, x),
        Witness::TopNotGreatest { top, x } => ok(&[top, x]) && top == l.top() && !l.leq(x, top),
        Witness::NoMeet { a, b } => ok(&[a, b]) && {
            let lower: Vec<usize> = l.elements().filter(|&x| l.leq(x, a) && l.leq(x, b)).collect();
            !lower.iter().any(|&g| lower.iter().all(|&x| l.leq(x, g)))
        },
        Witness::NoJoin { a, b } => ok(&[a, b]) && {
            let upper: Vec<usize> = l.elements().filter(|&x| l.leq(a, x) && l.leq(b, x)).collect();
            !upper.iter().any(|&m| upper.iter().all(|&x| l.leq(m, x)))
        },
        Witness::OrthoNotInvolutive { a } => ok(&[a]) && o(a).and_then(o).is_some_and(|aa| aa != a),
        Witness::OrthoNotAntitone { a, b } => {
            ok(&[a, b]) && l.leq(a, b) && matches!((o(a), o(b)), (Some(oa), Some(ob)) if !l.leq(ob, oa))
        }
        Witness::OrthoMeetNotBottom { a } => {
            ok(&[a]) && o(a).and_then(|oa| meet(a, oa)).is_some_and(|m| m != l.bottom())
        }
        Witness::NotAtomic { x } => {
            ok(&[x]) && x != l.bottom() && !l.atoms().iter().any(|&at| l.leq(at, x))
        }
        Witness::CoveringFails { atom, b, c } => {
            ok(&[atom, b, c])
                && l.is_atom(atom)
                && meet(atom, b) == Some(l.bottom())
                && join(atom, b).is_some_and(|j| l.lt(b, c) && l.lt(c, j))
        }
        Witness::NotWeaklyModular { a, b } => {
            ok(&[a, b])
                && l.leq(a, b)
                && o(b).and_then(|ob| join(a, ob)).and_then(|j| meet(j, b)).is_some_and(|m| m != a)
        }
        Witness::NotBoolean { a, b, x, y, z } => {
            ok(&[a, b, x, y, z]) && l.leq(a, b) && {
                let lhs = join(y, z).and_then(|yz| meet(x, yz));
                let rhs = match (meet(x, y), meet(x, z)) {
                    (Some(p), Some(q)) => join(p, q),
                    _ => None,
                };
                lhs.is_some() && rhs.is_some() && lhs != rhs
            }
        }
        Witness::TwoPointPlane { a, b, join: j } => {
            ok(&[a, b, j])
                && a != b
                && l.is_atom(a)
                && l.is_atom(b)
                && join(a, b) == Some(j)
                && l.atoms().iter().filter(|&&c| l.leq(c, j)).count() == 2
                && !o(b).is_some_and(|ob| l.leq(a, ob))
        }
        Witness::SameCartan { p, q } => sps.is_some_and(|s| {
            p != q
                && p.max(q) < s.state_count()
                && l.elements().all(|a| s.actual(p, a) == s.actual(q, a))
        }),
        Witness::PropertyStateNotAtom { state, property } => sps.is_some_and(|s| {
            state < s.state_count()
                && property < n
                && l.elements().filter(|&a| s.actual(state, a)).all(|a| l.leq(property, a))
                && s.actual(state, property)
                && !l.is_atom(property)
        }),
        Witness::OrphanAtom { atom } => sps.is_some_and(|s| {
            atom < n && l.is_atom(atom) && (0..s.state_count()).all(|p| s.property_state(p) != atom)
        }),
        Witness::SsrNonOrthogonal { a, b } => sps.is_some_and(|s| {
            ok(&[a, b]) && a != b && l.is_atom(a) && l.is_atom(b) && {
                let j = l.join(a, b);
                let separated =
                    (0..s.state_count()).all(|p| !s.actual(p, j) || s.actual(p, a) || s.actual(p, b));
                let orthogonal = (0..s.state_count())
                    .filter(|&p| s.actual(p, a))
                    .all(|p| (0..s.state_count()).filter(|&q| s.actual(q, b)).all(|q| s.orthogonal(p, q)));
                separated && !orthogonal
            }
        }),
        Witness::Indeterminate { property, state } => sps.is_some_and(|s| {
            property < n
                && state < s.state_count()
                && !s.actuality(property).contains(state)
                && !s.certain_no(property).contains(state)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_covering_law, check_weak_modularity};
    use crate::lattice::examples;

    #[test]
    fn benzene_witnesses_replay() {
        let l = examples::benzene();
        for r in [check_covering_law(&l).unwrap(), check_weak_modularity(&l).unwrap()] {
            assert!(replay(r.witness.as_ref().unwrap(), &l, None));
        }
    }

    #[test]
    fn bogus_witnesses_do_not_replay() {
        let l = examples::boolean(2);
        assert!(!replay(&Witness::NotWeaklyModular { a: 1, b: 3 }, &l, None));
        assert!(!replay(&Witness::CoveringFails { atom: 1, b: 0, c: 1 }, &l, None));
        assert!(!replay(&Witness::NotReflexive { a: 9 }, &l, None));
        assert!(!replay(&Witness::SameCartan { p: 0, q: 1 }, &l, None));
    }
}
