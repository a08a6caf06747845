//! Property bodies shared by the proptest suites and the acceptance runner.
//! Each takes a seed and builds its own random structure from it.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlat::axioms::{
    check_boolean_sublattice, check_orthocomplementation, check_weak_modularity, full_report, full_report_sps, replay,
    ssr_atom_pairs, ssr_diagnostic, three_points_per_line_check,
};
use qlat::closure::{ClosureSystem, StateSet};
use qlat::hilbert::{Exact, Scalar, Subspace};
use qlat::lattice::{FiniteOrtholattice, Limits};
use qlat::report::{Axiom, AxiomReport};
use qlat::sps::{StatePropertySystem, YesNoTest};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 2–6 states and 1–4 tests; each state is yes, no or undetermined per test.
pub fn random_sps(r: &mut ChaCha8Rng) -> StatePropertySystem {
    let n = r.gen_range(2..=6);
    let k = r.gen_range(1..=4);
    let tests = (0..k)
        .map(|t| {
            let (mut yes, mut no) = (StateSet::EMPTY, StateSet::EMPTY);
            for s in 0..n {
                match r.gen_range(0..3) {
                    0 => yes.insert(s),
                    1 => no.insert(s),
                    _ => {}
                }
            }
            YesNoTest::new(format!("t{t}"), yes, no)
        })
        .collect();
    let states = (0..n).map(|s| format!("s{s}")).collect();
    StatePropertySystem::from_tests(states, tests, None, &Limits::default()).expect("small random system")
}

/// Lattice of a random intersection-closed family with a random involution
/// swapping the bounds as its ortho candidate.
pub fn random_ortholattice(r: &mut ChaCha8Rng) -> FiniteOrtholattice {
    let ground = r.gen_range(2..=4);
    let gens: Vec<StateSet> = (0..r.gen_range(1..=5)).map(|_| StateSet::from_bits(r.gen_range(0..1u64 << ground))).collect();
    let fam = ClosureSystem::generate(ground, gens.into_iter().chain([StateSet::EMPTY]), 1 << ground).expect("small family");
    let members = fam.members();
    let n = members.len();
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    let l = FiniteOrtholattice::from_fn(labels, |a, b| members[a].is_subset(members[b]), 0, n - 1, &Limits::default())
        .expect("family lattice");
    let mut inner: Vec<usize> = (1..n - 1).collect();
    let mut ortho: Vec<usize> = (0..n).collect();
    ortho[0] = n - 1;
    ortho[n - 1] = 0;
    while inner.len() >= 2 {
        let i = inner.swap_remove(r.gen_range(0..inner.len()));
        let j = inner.swap_remove(r.gen_range(0..inner.len()));
        if r.gen_bool(0.8) {
            ortho[i] = j;
            ortho[j] = i;
        }
    }
    l.with_ortho(ortho).expect("in range")
}

pub fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<Exact> {
    (0..dim).map(|_| Exact::gaussian(r.gen_range(-2..=2), 1, r.gen_range(-1..=1), 1)).collect()
}

pub fn random_subspace(r: &mut ChaCha8Rng, dim: usize) -> Subspace<Exact> {
    let k = r.gen_range(0..=dim);
    Subspace::span(dim, (0..k).map(|_| random_vector(r, dim)).collect::<Vec<_>>()).expect("right length")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// `p` actual at `a` and `a ≤ b` make `p` actual at `b`.
pub fn actuality_upward_closed(seed: u64) -> Result<(), TestCaseError> {
    let s = random_sps(&mut rng(seed));
    let l = s.lattice();
    for a in l.elements() {
        for b in l.elements().filter(|&b| l.leq(a, b)) {
            check(s.actuality(a).is_subset(s.actuality(b)), || format!("{} ≤ {} but actuality shrinks", l.label(a), l.label(b)))?;
        }
    }
    for p in 0..s.state_count() {
        let ps = s.property_state(p);
        check(s.actual(p, ps), || format!("property state of {p} not actual"))?;
        check(s.cartan(p).iter().all(|&a| l.leq(ps, a)), || format!("property state of {p} not below its Cartan set"))?;
    }
    Ok(())
}

/// Extensive, idempotent and monotone; the closure equals the intersection of
/// every generator containing the input (brute force).
pub fn closure_laws(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let ground = r.gen_range(1..=16);
    let mask = (1u64 << ground) - 1;
    let gens: Vec<StateSet> = (0..r.gen_range(0..=6)).map(|_| StateSet::from_bits(r.gen::<u64>() & mask)).collect();
    let fam = ClosureSystem::generate(ground, gens.iter().copied(), 1 << 16).expect("at most 2^6 members");
    let full = StateSet::full(ground);
    for _ in 0..8 {
        let x = StateSet::from_bits(r.gen::<u64>() & mask & r.gen::<u64>());
        let y = x | StateSet::from_bits(r.gen::<u64>() & mask);
        let cx = fam.closure(x);
        check(x.is_subset(cx), || format!("{x:?} ⊄ cl = {cx:?}"))?;
        check(fam.closure(cx) == cx, || "not idempotent".into())?;
        check(cx.is_subset(fam.closure(y)), || "not monotone".into())?;
        check(fam.contains(cx), || "closure outside the family".into())?;
        let brute = gens.iter().filter(|g| x.is_subset(**g)).fold(full, |acc, g| acc & *g);
        check(cx == brute, || format!("cl({x:?}) = {cx:?}, brute force {brute:?}"))?;
    }
    Ok(())
}

/// `(A ∧ B)' = A' ∨ B'` and `(A ∨ B)' = A' ∧ B'`, exactly, in dimensions 2–6.
pub fn de_morgan(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let dim = r.gen_range(2..=6);
    let (a, b) = (random_subspace(&mut r, dim), random_subspace(&mut r, dim));
    let meet = a.meet(&b).expect("same dimension");
    let join = a.join(&b).expect("same dimension");
    let (ao, bo) = (a.ortho(), b.ortho());
    check(meet.ortho() == ao.join(&bo).expect("same dimension"), || format!("(A∧B)' ≠ A'∨B' in C^{dim}"))?;
    check(join.ortho() == ao.meet(&bo).expect("same dimension"), || format!("(A∨B)' ≠ A'∧B' in C^{dim}"))?;
    check(meet.leq(&a).unwrap() && meet.leq(&b).unwrap() && a.leq(&join).unwrap() && b.leq(&join).unwrap(), || {
        "meet/join not bounds".into()
    })?;
    check(meet.rank() + join.rank() == a.rank() + b.rank(), || "dimension formula fails".into())?;
    Ok(())
}

fn replays(rep: &AxiomReport, l: &FiniteOrtholattice, s: Option<&StatePropertySystem>) -> Result<(), TestCaseError> {
    match &rep.witness {
        Some(w) => check(replay(w, l, s), || format!("{} witness {w:?} does not replay", rep.axiom)),
        None => Ok(()),
    }
}

/// Every failing report carries a witness that reproduces the violation.
pub fn witness_replay(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let l = random_ortholattice(&mut r);
    for rep in full_report(&l).reports() {
        replays(rep, &l, None)?;
    }
    let s = random_sps(&mut r);
    let l = s.lattice();
    for rep in full_report_sps(&s).reports() {
        replays(rep, l, Some(&s))?;
    }
    for rep in [ssr_diagnostic(&s), three_points_per_line_check(l)].into_iter().flatten() {
        replays(&rep, l, Some(&s))?;
    }
    for a in l.elements() {
        replays(&s.classicality_report(a), l, Some(&s))?;
        for b in l.elements().filter(|&b| l.leq(a, b)) {
            if let Ok(rep) = check_boolean_sublattice(l, a, b) {
                replays(&rep, l, Some(&s))?;
            }
        }
    }
    Ok(())
}

/// Weak modularity ⟺ every comparable pair generates a Boolean sublattice.
pub fn wm_iff_boolean(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let l = if r.gen_bool(0.5) { random_sps(&mut r).lattice().clone() } else { random_ortholattice(&mut r) };
    if !check_orthocomplementation(&l).map(|x| x.passed()).unwrap_or(false) {
        return Ok(());
    }
    let wm = check_weak_modularity(&l).expect("ortho present").passed();
    let boolean = l
        .elements()
        .all(|a| l.elements().filter(|&b| l.leq(a, b)).all(|b| check_boolean_sublattice(&l, a, b).expect("valid").passed()));
    check(wm == boolean, || format!("weak modularity {wm}, Boolean sublattices {boolean}"))
}

/// Where axioms 1–4 and 5 or 6 pass, ssr-separated atoms are orthogonal.
pub fn ssr_orthogonality(seed: u64) -> Result<(), TestCaseError> {
    let s = random_sps(&mut rng(seed));
    let rep = full_report_sps(&s);
    let base = [Axiom::Completeness, Axiom::Orthocomplementation, Axiom::StateDetermination, Axiom::Atomicity]
        .iter()
        .all(|&a| rep.passed(a) == Some(true));
    let either = rep.passed(Axiom::CoveringLaw) == Some(true) || rep.passed(Axiom::WeakModularity) == Some(true);
    if !(base && either) {
        return Ok(());
    }
    for (a, b) in ssr_atom_pairs(&s) {
        check(s.property_orthogonal(a, b), || {
            format!("atoms {} and {} are ssr-separated but not orthogonal", s.lattice().label(a), s.lattice().label(b))
        })?;
    }
    Ok(())
}

/// Runs `body` on `cases` seeds; used by the acceptance runner.
pub fn run(cases: u32, body: fn(u64) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&any::<u64>(), body).map_err(|e| e.to_string())
}
