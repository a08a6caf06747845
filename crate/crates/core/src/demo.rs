//! Joint measurements of two sub-systems: the superposition argument showing
//! that two commuting measurements on one Hilbert space cannot be separate,
//! and singlet correlations with the CHSH combination.

use num_complex::Complex64;
use thiserror::Error;

use crate::hilbert::matrix::{basis_vector, inner, is_zero_vector, norm_sqr, scale_vec, sub_vec, ComplexMatrix};
use crate::hilbert::{born_probability, Exact, HilbertError, Scalar, Subspace, EPS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemoError {
    #[error("P1 and P2 act on spaces of dimension {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0} is not an orthogonal projector")]
    NotProjector(&'static str),
    #[error("P1 and P2 do not commute")]
    NotCommuting,
    #[error("{0} is 0 or I, so one measurement has a single possible outcome")]
    Degenerate(&'static str),
    #[error("the range of {0} is zero, so the superposition cannot be formed")]
    EmptyRange(&'static str),
    #[error("{0} does not map φ and χ onto multiples of themselves")]
    ImageOutsidePlane(String),
    #[error("factor dimensions must be at least 2, got {0} and {1}")]
    FactorTooSmall(usize, usize),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Two yes-no measurements on one space, given by the spectral projectors
/// `P1` (outcomes in I1) and `P2` (outcomes in I2).
#[derive(Debug, Clone)]
pub struct JointMeasurement<T> {
    p1: ComplexMatrix<T>,
    p2: ComplexMatrix<T>,
}

impl<T: Scalar> JointMeasurement<T> {
    pub fn new(p1: ComplexMatrix<T>, p2: ComplexMatrix<T>) -> Result<Self, DemoError> {
        if p1.rows() != p2.rows() || !p1.is_square() || !p2.is_square() {
            return Err(DemoError::DimensionMismatch(p1.rows(), p2.rows()));
        }
        if !p1.is_projector() {
            return Err(DemoError::NotProjector("P1"));
        }
        if !p2.is_projector() {
            return Err(DemoError::NotProjector("P2"));
        }
        let c = p1.commutator(&p2);
        if !c.vanishes() || c.max_abs() > EPS {
            return Err(DemoError::NotCommuting);
        }
        Ok(JointMeasurement { p1, p2 })
    }

    /// `P1 = P ⊗ I`, `P2 = I ⊗ Q`.
    pub fn tensor(p: &ComplexMatrix<T>, q: &ComplexMatrix<T>) -> Result<Self, DemoError> {
        let p1 = p.kron(&ComplexMatrix::identity(q.rows()));
        let p2 = ComplexMatrix::identity(p.rows()).kron(q);
        Self::new(p1, p2)
    }

    pub fn dim(&self) -> usize {
        self.p1.rows()
    }

    pub fn p1(&self) -> &ComplexMatrix<T> {
        &self.p1
    }

    pub fn p2(&self) -> &ComplexMatrix<T> {
        &self.p2
    }

    fn not(&self, p: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        ComplexMatrix::identity(self.dim()).sub(p)
    }

    /// Projector of the joint outcome set `A × B`, where `in1` selects I1 or
    /// E1 − I1 and `in2` selects I2 or E2 − I2.
    pub fn joint_projector(&self, in1: bool, in2: bool) -> ComplexMatrix<T> {
        let a = if in1 { self.p1.clone() } else { self.not(&self.p1) };
        let b = if in2 { self.p2.clone() } else { self.not(&self.p2) };
        a.mul(&b)
    }
}

/// `Qψ = (c_φ·φ̂ + c_χ·χ̂)/√2` for unit vectors `φ̂`, `χ̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image<T> {
    pub name: &'static str,
    pub c_phi: T,
    pub c_chi: T,
}

impl<T: Scalar> Image<T> {
    /// `‖Qψ‖²`
    pub fn norm_sqr(&self) -> T {
        let two = T::int(2);
        (self.c_phi.conj() * self.c_phi.clone() + self.c_chi.conj() * self.c_chi.clone()) / two
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoReport<T> {
    /// Unnormalized representatives of `φ ∈ ran P1(I−P2)` and `χ ∈ ran (I−P1)P2`.
    pub phi: Vec<T>,
    pub chi: Vec<T>,
    /// Joint outcomes `(x1,y1), (x1,y2), (x2,y1), (x2,y2)`.
    pub joint: [T; 4],
    /// `P1`, `I−P1`, `P2`, `I−P2`.
    pub marginals: [T; 4],
    /// Images of `ψ` under the four marginal and four joint projectors.
    pub images: Vec<Image<T>>,
    pub verdict: String,
}

impl<T: Scalar> DemoReport<T> {
    pub fn image(&self, name: &str) -> Option<&Image<T>> {
        self.images.iter().find(|i| i.name == name)
    }

    /// Both single-system measurements can give either outcome while the two
    /// diagonal joint outcomes are impossible.
    pub fn not_separate(&self) -> bool {
        self.marginals.iter().all(|m| !m.vanishes())
            && self.joint[0].vanishes()
            && self.joint[3].vanishes()
            && !self.joint[1].vanishes()
            && !self.joint[2].vanishes()
    }
}

/// First non-zero `A e_k`.
fn first_image<T: Scalar>(a: &ComplexMatrix<T>) -> Option<Vec<T>> {
    (0..a.cols()).map(|k| a.apply(&basis_vector(a.cols(), k))).find(|v| !is_zero_vector(v))
}

/// Builds `ψ = (φ̂ + χ̂)/√2` and evaluates every projector in the argument.
///
/// All quantities are computed from unnormalized `φ`, `χ` and their squared
/// norms, so Gaussian-rational inputs give exact results.
pub fn epr_contradiction_demo<T: Scalar>(j: &JointMeasurement<T>) -> Result<DemoReport<T>, DemoError> {
    let n = j.dim();
    let id = ComplexMatrix::identity(n);
    let zero = ComplexMatrix::zeros(n, n);
    if j.p1.approx_eq(&zero) || j.p1.approx_eq(&id) {
        return Err(DemoError::Degenerate("P1"));
    }
    if j.p2.approx_eq(&zero) || j.p2.approx_eq(&id) {
        return Err(DemoError::Degenerate("P2"));
    }
    let phi = first_image(&j.joint_projector(true, false)).ok_or(DemoError::EmptyRange("P1(I−P2)"))?;
    let chi = first_image(&j.joint_projector(false, true)).ok_or(DemoError::EmptyRange("(I−P1)P2"))?;
    let (nphi, nchi) = (norm_sqr(&phi), norm_sqr(&chi));

    // Coefficient of v̂ in Q v̂, with Q v̂ required to stay on the line of v
    // and to be orthogonal to the other vector.
    let coeff = |q: &ComplexMatrix<T>, v: &[T], nv: &T, other: &[T], name: &'static str| {
        let qv = q.apply(v);
        let c = inner(v, &qv) / nv.clone();
        if !is_zero_vector(&sub_vec(&qv, &scale_vec(v, &c))) || !inner(other, &qv).vanishes() {
            return Err(DemoError::ImageOutsidePlane(name.to_string()));
        }
        Ok(c)
    };
    let named: [(&'static str, ComplexMatrix<T>); 8] = [
        ("P1ψ", j.p1.clone()),
        ("(I−P1)ψ", j.not(&j.p1)),
        ("P2ψ", j.p2.clone()),
        ("(I−P2)ψ", j.not(&j.p2)),
        ("P1P2ψ", j.joint_projector(true, true)),
        ("P1(I−P2)ψ", j.joint_projector(true, false)),
        ("(I−P1)P2ψ", j.joint_projector(false, true)),
        ("(I−P1)(I−P2)ψ", j.joint_projector(false, false)),
    ];
    let mut images = Vec::new();
    for (name, q) in &named {
        let c_phi = coeff(q, &phi, &nphi, &chi, name)?;
        let c_chi = coeff(q, &chi, &nchi, &phi, name)?;
        images.push(Image { name, c_phi, c_chi });
    }
    let p = |k: usize| images[k].norm_sqr();
    let marginals = [p(0), p(1), p(2), p(3)];
    let joint = [p(4), p(5), p(6), p(7)];
    let mut report = DemoReport { phi, chi, joint, marginals, images, verdict: String::new() };
    report.verdict = if report.not_separate() {
        "M1 and M2 each have two possible outcomes, but (x1,y1) and (x2,y2) are impossible: \
         M1 and M2 are not separate measurements"
            .to_string()
    } else {
        "no contradiction with separateness in this configuration".to_string()
    };
    Ok(report)
}

/// `P = |0⟩⟨0|` on `C^{n1}` and `Q` the projector onto `(1,1,0,…)` on `C^{n2}`,
/// combined as `P ⊗ I` and `I ⊗ Q`.
pub fn tensor_instance(n1: usize, n2: usize) -> Result<JointMeasurement<Exact>, DemoError> {
    if n1 < 2 || n2 < 2 {
        return Err(DemoError::FactorTooSmall(n1, n2));
    }
    let p = Subspace::span(n1, [basis_vector(n1, 0)])?;
    let mut d: Vec<Exact> = vec![Exact::zero(); n2];
    d[0] = Exact::one();
    d[1] = Exact::one();
    let q = Subspace::span(n2, [d])?;
    JointMeasurement::tensor(p.projector(), q.projector())
}

/// Commuting projectors on `C⁴` not of the form `P ⊗ I`, `I ⊗ Q`:
/// `P1` onto `(1,1,0,0)`, `P2` onto `span{(1,−1,0,0), (0,0,1,i)}`.
pub fn non_factored_instance() -> JointMeasurement<Exact> {
    let q = |re: i64, im: i64| Exact::gaussian(re, 1, im, 1);
    let u1 = vec![q(1, 0), q(1, 0), q(0, 0), q(0, 0)];
    let u2 = vec![q(1, 0), q(-1, 0), q(0, 0), q(0, 0)];
    let u3 = vec![q(0, 0), q(0, 0), q(1, 0), q(0, 1)];
    let p1 = Subspace::span(4, [u1]).expect("length 4");
    let p2 = Subspace::span(4, [u2, u3]).expect("length 4");
    JointMeasurement::new(p1.projector().clone(), p2.projector().clone()).expect("orthogonal ranges commute")
}

/// Projector onto spin "up" along angle `θ` in the x–z plane.
pub fn spin_projector(theta: f64) -> ComplexMatrix<Complex64> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let v = [Complex64::new(c, 0.0), Complex64::new(s, 0.0)];
    ComplexMatrix::outer(&v, &v)
}

/// `(|01⟩ − |10⟩)/√2`
pub fn singlet() -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![Complex64::new(0.0, 0.0), Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, 0.0)]
}

/// `|0⟩ ⊗ |0⟩`-type product of two single-qubit vectors.
pub fn product_state(a: [Complex64; 2], b: [Complex64; 2]) -> Vec<Complex64> {
    crate::hilbert::matrix::kron_vec(&a, &b)
}

/// Expectation of the product of ±1 outcomes for spin measurements along
/// `θa` on the first qubit and `θb` on the second.
pub fn correlation(state: &[Complex64], theta_a: f64, theta_b: f64) -> Result<f64, DemoError> {
    if state.len() != 4 {
        return Err(HilbertError::DimensionMismatch { expected: 4, got: state.len() }.into());
    }
    let id = ComplexMatrix::<Complex64>::identity(2);
    let (pa, pb) = (spin_projector(theta_a), spin_projector(theta_b));
    let (ma, mb) = (id.sub(&pa), id.sub(&pb));
    let mut e = 0.0;
    for (a, sa) in [(&pa, 1.0), (&ma, -1.0)] {
        for (b, sb) in [(&pb, 1.0), (&mb, -1.0)] {
            e += sa * sb * born_probability(&a.kron(b), state)?.re;
        }
    }
    Ok(e)
}

/// Correlation on the singlet; equals `−cos(θa − θb)`.
pub fn singlet_correlation(theta_a: f64, theta_b: f64) -> f64 {
    correlation(&singlet(), theta_a, theta_b).expect("singlet is normalized")
}

/// The four correlators `[E(a,b), E(a,b′), E(a′,b), E(a′,b′)]` for angles `[a, a′, b, b′]`.
pub fn chsh_terms(state: &[Complex64], angles: [f64; 4]) -> Result<[f64; 4], DemoError> {
    let [a, a2, b, b2] = angles;
    Ok([correlation(state, a, b)?, correlation(state, a, b2)?, correlation(state, a2, b)?, correlation(state, a2, b2)?])
}

/// `|S|` with `S = E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)`.
pub fn chsh_value(state: &[Complex64], angles: [f64; 4]) -> Result<f64, DemoError> {
    let [ab, ab2, a2b, a2b2] = chsh_terms(state, angles)?;
    Ok((ab - ab2 + a2b + a2b2).abs())
}
