//! Turning parsed documents into lattices and state-property systems.

use std::collections::HashMap;

use super::{locate, parse_spec, Entry, HilbertSpec, InputError, LatticeSpec, SpecDocument, SpsSpec};
use crate::closure::{StateSet, MAX_STATES};
use crate::hilbert::{sample_sps, generate_subspace_lattice, Exact, Scalar, Subspace, SubspaceLattice};
use crate::lattice::{order_closure, FiniteOrtholattice, Limits};
use crate::product::{build_separated_product, ProductOptions, SeparatedProduct};
use crate::sps::{StatePropertySystem, YesNoTest};

/// A built document.
#[derive(Debug, Clone)]
pub enum Model {
    Lattice(FiniteOrtholattice),
    Sps(StatePropertySystem),
    Hilbert { lattice: SubspaceLattice<Exact>, sps: Option<StatePropertySystem> },
    Product(Box<SeparatedProduct>),
}

impl Model {
    pub fn lattice(&self) -> &FiniteOrtholattice {
        match self {
            Model::Lattice(l) => l,
            Model::Sps(s) => s.lattice(),
            Model::Hilbert { lattice, .. } => &lattice.lattice,
            Model::Product(p) => p.system().lattice(),
        }
    }

    /// The state layer, if the document has one.
    pub fn sps(&self) -> Option<&StatePropertySystem> {
        match self {
            Model::Lattice(_) => None,
            Model::Sps(s) => Some(s),
            Model::Hilbert { sps, .. } => sps.as_ref(),
            Model::Product(p) => Some(p.system()),
        }
    }
}

/// Reads, parses and builds a file.
pub fn load_file(path: &str, limits: &Limits) -> Result<(SpecDocument, Model), InputError> {
    let src = std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.to_string(), message: e.to_string() })?;
    let doc = parse_spec(&src)?;
    let model = build(&doc, &src, limits)?;
    Ok((doc, model))
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn err(&self, at: &str, nth: usize, message: impl Into<String>) -> InputError {
        let (line, column) = locate(self.src, at, nth);
        InputError::Semantic { line, column, message: message.into() }
    }

    /// Index map for a label list, rejecting duplicates.
    fn index(&self, what: &str, labels: &[String]) -> Result<HashMap<String, usize>, InputError> {
        let mut map = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if map.insert(l.clone(), i).is_some() {
                return Err(self.err(l, 1, format!("duplicate {what} label `{l}`")));
            }
        }
        Ok(map)
    }

    fn resolve(&self, what: &str, map: &HashMap<String, usize>, label: &str) -> Result<usize, InputError> {
        map.get(label).copied().ok_or_else(|| self.err(label, 0, format!("undeclared {what} `{label}`")))
    }
}

/// Builds the model described by `doc`; `src` is the text it was parsed from
/// and is used to position semantic errors.
pub fn build(doc: &SpecDocument, src: &str, limits: &Limits) -> Result<Model, InputError> {
    let cx = Ctx { src };
    match doc {
        SpecDocument::Lattice(spec) => build_lattice(&cx, spec, limits).map(Model::Lattice),
        SpecDocument::Sps(spec) => build_sps(&cx, spec, limits).map(Model::Sps),
        SpecDocument::HilbertSeeds(spec) => {
            let (lattice, sps) = build_hilbert(&cx, spec, limits)?;
            Ok(Model::Hilbert { lattice, sps })
        }
        SpecDocument::ProductJob(spec) => {
            let opts = ProductOptions { extended_generators: spec.extended };
            product_of((&spec.left, src), (&spec.right, src), opts, limits).map(|p| Model::Product(Box::new(p)))
        }
    }
}

/// Separated product of two factor files.
pub fn product_of(
    (left_doc, left_src): (&SpecDocument, &str),
    (right_doc, right_src): (&SpecDocument, &str),
    options: ProductOptions,
    limits: &Limits,
) -> Result<SeparatedProduct, InputError> {
    let factor = |d: &SpecDocument, src: &str| -> Result<StatePropertySystem, InputError> {
        match build(d, src, limits)? {
            Model::Sps(s) | Model::Hilbert { sps: Some(s), .. } => Ok(s),
            _ => Err(Ctx { src }.err("kind", 0, "a product factor needs states (`sps` or `hilbert-seeds` with directions)")),
        }
    };
    let (l, r) = (factor(left_doc, left_src)?, factor(right_doc, right_src)?);
    build_separated_product(&l, &r, options, limits).map_err(|e| Ctx { src: left_src }.err("kind", 0, e.to_string()))
}

fn build_lattice(cx: &Ctx, spec: &LatticeSpec, limits: &Limits) -> Result<FiniteOrtholattice, InputError> {
    let n = spec.elements.len();
    if n == 0 {
        return Err(cx.err("elements", 0, "a lattice needs at least one element"));
    }
    if n > limits.max_elements {
        return Err(cx.err("elements", 0, format!("{n} elements exceed the cap of {}", limits.max_elements)));
    }
    let idx = cx.index("element", &spec.elements)?;
    let pairs = |list: &[[String; 2]]| -> Result<Vec<(usize, usize)>, InputError> {
        list.iter().map(|[a, b]| Ok((cx.resolve("element", &idx, a)?, cx.resolve("element", &idx, b)?))).collect()
    };
    let leq = match (&spec.order, &spec.leq) {
        (Some(_), Some(_)) => return Err(cx.err("leq", 0, "give either `order` or `leq`, not both")),
        (Some(o), None) => order_closure(n, &pairs(o)?),
        (None, Some(l)) => {
            let mut m = vec![vec![false; n]; n];
            for (a, b) in pairs(l)? {
                m[a][b] = true;
            }
            m
        }
        (None, None) => order_closure(n, &[]),
    };
    let bottom = match &spec.bottom {
        Some(b) => cx.resolve("element", &idx, b)?,
        None => 0,
    };
    let top = match &spec.top {
        Some(t) => cx.resolve("element", &idx, t)?,
        None => n - 1,
    };
    let mut l = FiniteOrtholattice::with_limits(spec.elements.clone(), &leq, bottom, top, limits)
        .map_err(|e| cx.err("elements", 0, e.to_string()))?;
    if let Some(o) = &spec.ortho {
        let mut map: Vec<Option<usize>> = vec![None; n];
        for (a, b) in pairs(o)? {
            for (x, y) in [(a, b), (b, a)] {
                if map[x].is_some_and(|z| z != y) {
                    let label = &spec.elements[x];
                    return Err(cx.err(label, 0, format!("conflicting ortho images for `{label}`")));
                }
                map[x] = Some(y);
            }
        }
        let map: Vec<usize> = map
            .iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| cx.err("ortho", 0, format!("ortho map has no image for `{}`", spec.elements[i]))))
            .collect::<Result<_, _>>()?;
        l = l.with_ortho(map).map_err(|e| cx.err("ortho", 0, e.to_string()))?;
    }
    Ok(l)
}

fn build_sps(cx: &Ctx, spec: &SpsSpec, limits: &Limits) -> Result<StatePropertySystem, InputError> {
    let n = spec.states.len();
    if n > MAX_STATES {
        return Err(cx.err("states", 0, format!("{n} states exceed the limit of {MAX_STATES}")));
    }
    let sidx = cx.index("state", &spec.states)?;
    let set = |labels: &[String]| -> Result<StateSet, InputError> {
        labels.iter().map(|l| cx.resolve("state", &sidx, l)).collect()
    };
    let names: Vec<String> = spec.properties.iter().map(|p| p.name.clone()).collect();
    cx.index("property", &names)?;
    let mut tests: Vec<YesNoTest> = Vec::new();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    for p in &spec.properties {
        let earlier = |name: &str| -> Result<&YesNoTest, InputError> {
            by_name.get(name).map(|&i| &tests[i]).ok_or_else(|| {
                cx.err(name, 0, format!("property `{name}` is undeclared or declared after `{}`", p.name))
            })
        };
        let forms = [p.yes.is_some() || p.no.is_some(), p.inverse.is_some(), p.product.is_some()];
        if forms.iter().filter(|&&f| f).count() != 1 {
            return Err(cx.err(&p.name, 0, format!("property `{}` needs exactly one of yes/no, inverse, product", p.name)));
        }
        let t = if let Some(of) = &p.inverse {
            earlier(of)?.inverse(p.name.clone())
        } else if let Some(parts) = &p.product {
            if parts.is_empty() {
                return Err(cx.err(&p.name, 0, format!("product `{}` has no components", p.name)));
            }
            let parts: Vec<&YesNoTest> = parts.iter().map(|x| earlier(x)).collect::<Result<_, _>>()?;
            YesNoTest::product(p.name.clone(), parts, n)
        } else {
            let yes = set(p.yes.as_deref().unwrap_or(&[]))?;
            let no = set(p.no.as_deref().unwrap_or(&[]))?;
            if let Some(s) = (yes & no).first() {
                return Err(cx.err(&p.name, 0, format!("state `{}` is both yes and no for `{}`", spec.states[s], p.name)));
            }
            YesNoTest::new(p.name.clone(), yes, no)
        };
        by_name.insert(p.name.clone(), tests.len());
        tests.push(t);
    }
    let ortho = match &spec.state_ortho {
        None => None,
        Some(pairs) => {
            let mut rows = vec![StateSet::EMPTY; n];
            for [a, b] in pairs {
                let (i, j) = (cx.resolve("state", &sidx, a)?, cx.resolve("state", &sidx, b)?);
                rows[i].insert(j);
                rows[j].insert(i);
            }
            Some(rows)
        }
    };
    StatePropertySystem::from_tests(spec.states.clone(), tests, ortho, limits).map_err(|e| cx.err("properties", 0, e.to_string()))
}

fn entry(cx: &Ctx, e: &Entry) -> Result<Exact, InputError> {
    if e[1] == 0 || e[3] == 0 {
        return Err(cx.err("basis", 0, format!("zero denominator in entry {e:?}")));
    }
    Ok(Exact::gaussian(e[0], e[1], e[2], e[3]))
}

fn build_hilbert(
    cx: &Ctx,
    spec: &HilbertSpec,
    limits: &Limits,
) -> Result<(SubspaceLattice<Exact>, Option<StatePropertySystem>), InputError> {
    let dim = spec.dimension;
    if dim == 0 || dim > crate::hilbert::MAX_DIMENSION {
        return Err(cx.err("dimension", 0, format!("dimension must be between 1 and {}", crate::hilbert::MAX_DIMENSION)));
    }
    let names: Vec<String> = spec.seeds.iter().map(|s| s.name.clone()).collect();
    cx.index("seed", &names)?;
    let vector = |v: &[Entry], owner: &str| -> Result<Vec<Exact>, InputError> {
        if v.len() != dim {
            return Err(cx.err(owner, 0, format!("`{owner}` has a vector of length {}, expected {dim}", v.len())));
        }
        v.iter().map(|e| entry(cx, e)).collect()
    };
    let mut seeds = Vec::new();
    for s in &spec.seeds {
        let vs: Vec<Vec<Exact>> = s.basis.iter().map(|v| vector(v, &s.name)).collect::<Result<_, _>>()?;
        let sub = Subspace::span(dim, vs).map_err(|e| cx.err(&s.name, 0, e.to_string()))?;
        seeds.push((s.name.clone(), sub));
    }
    match &spec.directions {
        None => {
            let sl = generate_subspace_lattice(dim, &seeds, limits).map_err(|e| cx.err("seeds", 0, e.to_string()))?;
            Ok((sl, None))
        }
        Some(dirs) => {
            let dnames: Vec<String> = dirs.iter().map(|d| d.name.clone()).collect();
            cx.index("direction", &dnames)?;
            if dirs.len() > MAX_STATES {
                return Err(cx.err("directions", 0, format!("more than {MAX_STATES} directions")));
            }
            let mut ds = Vec::new();
            for d in dirs {
                let v = vector(&d.vector, &d.name)?;
                if v.iter().all(Scalar::vanishes) {
                    return Err(cx.err(&d.name, 0, format!("direction `{}` is the zero vector", d.name)));
                }
                ds.push((d.name.clone(), v));
            }
            let (sps, sl) = sample_sps(dim, &ds, &seeds, limits).map_err(|e| cx.err("directions", 0, e.to_string()))?;
            Ok((sl, Some(sps)))
        }
    }
}
