//! Text and JSON rendering of reports. Output is deterministic: JSON objects
//! have sorted keys and every list follows element or declaration order.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::demo::DemoReport;
use crate::hilbert::{Exact, Scalar};
use crate::lattice::FiniteOrtholattice;
use crate::report::{FullReport, Outcome, Ref, Witness};
use crate::sps::StatePropertySystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn name_of(r: Ref, l: &FiniteOrtholattice, sps: Option<&StatePropertySystem>) -> String {
    match r {
        Ref::Element(a) => l.label(a).to_string(),
        Ref::State(p) => sps.and_then(|s| s.states().get(p)).cloned().unwrap_or_else(|| format!("#{p}")),
    }
}

fn witness_json(w: &Witness, l: &FiniteOrtholattice, sps: Option<&StatePropertySystem>) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(w.kind()));
    for (k, r) in w.parts() {
        m.insert(k.into(), json!(name_of(r, l, sps)));
    }
    Value::Object(m)
}

fn witness_text(w: &Witness, l: &FiniteOrtholattice, sps: Option<&StatePropertySystem>) -> String {
    let parts: Vec<String> = w.parts().into_iter().map(|(k, r)| format!("{k}={}", name_of(r, l, sps))).collect();
    format!("{} {}", w.kind(), parts.join(" "))
}

/// Renders an axiom report for `l` (and `sps`, whose states name witness
/// states).
pub fn render_report(
    report: &FullReport,
    l: &FiniteOrtholattice,
    sps: Option<&StatePropertySystem>,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let axioms: Vec<Value> = report
                .outcomes
                .iter()
                .map(|o| {
                    let mut m = Map::new();
                    m.insert("axiom".into(), json!(o.axiom().name()));
                    m.insert("number".into(), json!(o.axiom().number()));
                    match o {
                        Outcome::Checked(r) => {
                            m.insert("verdict".into(), json!(if r.passed() { "pass" } else { "fail" }));
                            if let Some(w) = &r.witness {
                                m.insert("witness".into(), witness_json(w, l, sps));
                            }
                            if let Some(n) = &r.note {
                                m.insert("note".into(), json!(n));
                            }
                        }
                        Outcome::NotApplicable { reason, .. } => {
                            m.insert("verdict".into(), json!("not-applicable"));
                            m.insert("reason".into(), json!(reason));
                        }
                    }
                    Value::Object(m)
                })
                .collect();
            let v = json!({
                "elements": l.len(),
                "states": sps.map(StatePropertySystem::state_count),
                "axioms": axioms,
                "passed": !report.any_failed(),
            });
            let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            match sps {
                Some(x) => writeln!(s, "{} elements, {} states", l.len(), x.state_count()),
                None => writeln!(s, "{} elements", l.len()),
            }
            .expect("write to string");
            for o in &report.outcomes {
                let tag = o.axiom().number().map_or("   ".to_string(), |n| format!("[{n}]"));
                let line = match o {
                    Outcome::Checked(r) => match &r.witness {
                        None => "pass".to_string(),
                        Some(w) => format!("FAIL  {}", witness_text(w, l, sps)),
                    },
                    Outcome::NotApplicable { reason, .. } => format!("n/a   {reason}"),
                };
                writeln!(s, "{tag} {:<22} {line}", o.axiom().name()).expect("write to string");
                if let Some(note) = o.report().and_then(|r| r.note.as_ref()) {
                    for line in note.lines() {
                        writeln!(s, "    {line}").expect("write to string");
                    }
                }
            }
            let failing = report.failing();
            if failing.is_empty() {
                s.push_str("result: pass\n");
            } else {
                let names: Vec<&str> = failing.iter().map(|a| a.name()).collect();
                writeln!(s, "result: FAIL ({})", names.join(", ")).expect("write to string");
            }
            s
        }
    }
}

/// Element list followed by the Hasse diagram.
pub fn render_text_lattice(l: &FiniteOrtholattice) -> String {
    let mut s = String::new();
    for a in l.elements() {
        match l.complement(a) {
            Some(c) => writeln!(s, "{a:>3}  {}  ' = {}", l.label(a), l.label(c)),
            None => writeln!(s, "{a:>3}  {}", l.label(a)),
        }
        .expect("write to string");
    }
    s.push_str(&l.hasse_dump());
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn ratio(x: &num_rational::BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact Gaussian rational as `a`, `bi` or `a+bi`.
pub fn exact_string(z: &Exact) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => ratio(&z.re),
        (true, false) => format!("{}i", ratio(&z.im)),
        (false, false) if z.im < num_rational::BigRational::zero() => {
            format!("{}-{}i", ratio(&z.re), ratio(&-z.im.clone()))
        }
        (false, false) => format!("{}+{}i", ratio(&z.re), ratio(&z.im)),
    }
}

const JOINT: [&str; 4] = ["(x1,y1)", "(x1,y2)", "(x2,y1)", "(x2,y2)"];
const MARGINAL: [&str; 4] = ["P1", "I-P1", "P2", "I-P2"];

/// Renders the superposition argument. Image coefficients are relative to
/// `(φ̂ + χ̂)/√2`.
pub fn render_demo(r: &DemoReport<Exact>, format: Format) -> String {
    let vec = |v: &[Exact]| v.iter().map(exact_string).collect::<Vec<_>>();
    match format {
        Format::Json => {
            let probs = |names: &[&str], vals: &[Exact]| {
                let m: Map<String, Value> =
                    names.iter().zip(vals).map(|(n, v)| (n.to_string(), json!(exact_string(v)))).collect();
                Value::Object(m)
            };
            let images: Vec<Value> = r
                .images
                .iter()
                .map(|i| {
                    json!({
                        "name": i.name,
                        "phi": exact_string(&i.c_phi),
                        "chi": exact_string(&i.c_chi),
                        "norm_sqr": exact_string(&i.norm_sqr()),
                    })
                })
                .collect();
            let v = json!({
                "phi": vec(&r.phi),
                "chi": vec(&r.chi),
                "joint": probs(&JOINT, &r.joint),
                "marginals": probs(&MARGINAL, &r.marginals),
                "images": images,
                "not_separate": r.not_separate(),
                "verdict": r.verdict,
            });
            let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let w = &mut s;
            writeln!(w, "phi = ({})", vec(&r.phi).join(", ")).expect("write to string");
            writeln!(w, "chi = ({})", vec(&r.chi).join(", ")).expect("write to string");
            writeln!(w, "psi = (phi/|phi| + chi/|chi|)/sqrt2").expect("write to string");
            for i in &r.images {
                let coef = |c: &Exact, v: &str| {
                    if c.vanishes() {
                        None
                    } else if c.is_one() {
                        Some(format!("{v}/sqrt2"))
                    } else {
                        Some(format!("({}){v}/sqrt2", exact_string(c)))
                    }
                };
                let terms: Vec<String> =
                    [coef(&i.c_phi, "phi^"), coef(&i.c_chi, "chi^")].into_iter().flatten().collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                writeln!(w, "{:<15} = {rhs}", i.name).expect("write to string");
            }
            for (n, p) in MARGINAL.iter().zip(&r.marginals) {
                writeln!(w, "Pr[{n}] = {}", exact_string(p)).expect("write to string");
            }
            for (n, p) in JOINT.iter().zip(&r.joint) {
                writeln!(w, "Pr{n} = {}", exact_string(p)).expect("write to string");
            }
            writeln!(w, "{}", r.verdict).expect("write to string");
            s
        }
    }
}

/// CHSH combination with the four correlations behind it.
pub fn render_chsh(angles: [f64; 4], terms: [f64; 4], value: f64, format: Format) -> String {
    let names = ["E(a,b)", "E(a,b')", "E(a',b)", "E(a',b')"];
    match format {
        Format::Json => {
            let corr: Map<String, Value> = names.iter().zip(terms).map(|(n, t)| (n.to_string(), json!(t))).collect();
            let v = json!({
                "angles": {"a": angles[0], "a'": angles[1], "b": angles[2], "b'": angles[3]},
                "correlations": corr,
                "S": value,
                "abs_S": value.abs(),
                "violates_bound": value.abs() > 2.0 + 1e-9,
            });
            let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "angles a={} a'={} b={} b'={}", angles[0], angles[1], angles[2], angles[3])
                .expect("write to string");
            for (n, t) in names.iter().zip(terms) {
                writeln!(s, "{n:<9} = {t:+.12}").expect("write to string");
            }
            writeln!(s, "S = E(a,b) - E(a,b') + E(a',b) + E(a',b') = {value:+.12}").expect("write to string");
            writeln!(s, "|S| = {:.12} (local bound 2)", value.abs()).expect("write to string");
            s
        }
    }
}
