//! Subspaces of `Tⁿ` and their lattice operations.
//!
//! A subspace keeps an orthogonal (not normalized) basis together with the
//! squared norms of its vectors, so the projector `Σ u uᴴ / ⟨u,u⟩` stays in the
//! field of the inputs. Over Gaussian rationals every operation is exact.
//! Subspace identity is projector equality.

use super::matrix::{inner, is_zero_vector, norm_sqr, scale_vec, sub_vec, ComplexMatrix};
use super::scalar::Scalar;
use super::HilbertError;

#[derive(Debug, Clone)]
pub struct Subspace<T> {
    dim: usize,
    basis: Vec<Vec<T>>,
    projector: ComplexMatrix<T>,
}

impl<T: Scalar> PartialEq for Subspace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.projector.approx_eq(&other.projector)
    }
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: Vec::new(), projector: ComplexMatrix::zeros(dim, dim) }
    }

    pub fn full(dim: usize) -> Self {
        Self::span(dim, (0..dim).map(|k| super::matrix::basis_vector(dim, k)).collect::<Vec<_>>())
            .expect("canonical basis has the right length")
    }

    /// Span of `vectors`, orthogonalized by Gram-Schmidt without normalization.
    pub fn span(dim: usize, vectors: impl IntoIterator<Item = Vec<T>>) -> Result<Self, HilbertError> {
        let mut basis: Vec<Vec<T>> = Vec::new();
        let mut norms: Vec<T> = Vec::new();
        for v in vectors {
            if v.len() != dim {
                return Err(HilbertError::DimensionMismatch { expected: dim, got: v.len() });
            }
            let mut u = v;
            for (b, nb) in basis.iter().zip(&norms) {
                let c = inner(b, &u) / nb.clone();
                u = sub_vec(&u, &scale_vec(b, &c));
            }
            let nu = norm_sqr(&u);
            if !is_zero_vector(&u) && !nu.vanishes() {
                basis.push(u);
                norms.push(nu);
            }
        }
        let mut projector = ComplexMatrix::zeros(dim, dim);
        for (u, nu) in basis.iter().zip(&norms) {
            let inv = T::one() / nu.clone();
            projector = projector.add(&ComplexMatrix::outer(u, u).scale(&inv));
        }
        Ok(Subspace { dim, basis, projector })
    }

    /// Range of a projector.
    pub fn from_projector(p: &ComplexMatrix<T>) -> Result<Self, HilbertError> {
        if !p.is_projector() {
            return Err(HilbertError::NotProjector);
        }
        Self::span(p.rows(), (0..p.cols()).map(|j| p.column(j)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Orthogonal basis vectors, not normalized.
    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn projector(&self) -> &ComplexMatrix<T> {
        &self.projector
    }

    fn same_dim(&self, other: &Self) -> Result<(), HilbertError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(HilbertError::DimensionMismatch { expected: self.dim, got: other.dim })
        }
    }

    /// Orthogonal complement, the range of `I − P`.
    pub fn ortho(&self) -> Self {
        let q = ComplexMatrix::identity(self.dim).sub(&self.projector);
        Self::span(self.dim, (0..self.dim).map(|j| q.column(j))).expect("same dimension")
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Self) -> Result<Self, HilbertError> {
        self.same_dim(other)?;
        Self::span(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Intersection: the common kernel of `I − P₁` and `I − P₂`.
    pub fn meet(&self, other: &Self) -> Result<Self, HilbertError> {
        self.same_dim(other)?;
        let id = ComplexMatrix::identity(self.dim);
        let (q1, q2) = (id.sub(&self.projector), id.sub(&other.projector));
        let rows: Vec<Vec<T>> = (0..self.dim).map(|i| q1.row(i).to_vec()).chain((0..self.dim).map(|i| q2.row(i).to_vec())).collect();
        Self::span(self.dim, nullspace(&ComplexMatrix::from_rows(rows)))
    }

    pub fn leq(&self, other: &Self) -> Result<bool, HilbertError> {
        self.same_dim(other)?;
        leq_projector(&self.projector, &other.projector)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        v.len() == self.dim && sub_vec(&self.projector.apply(v), v).iter().all(Scalar::vanishes)
    }
}

/// `Pa ≤ Pb` iff `Pa·Pb = Pb·Pa = Pa`.
pub fn leq_projector<T: Scalar>(pa: &ComplexMatrix<T>, pb: &ComplexMatrix<T>) -> Result<bool, HilbertError> {
    if (pa.rows(), pa.cols()) != (pb.rows(), pb.cols()) {
        return Err(HilbertError::DimensionMismatch { expected: pa.rows(), got: pb.rows() });
    }
    if !pa.is_projector() || !pb.is_projector() {
        return Err(HilbertError::NotProjector);
    }
    Ok(pa.mul(pb).approx_eq(pa) && pb.mul(pa).approx_eq(pa))
}

/// `I − P`
pub fn ortho_projector<T: Scalar>(p: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    ComplexMatrix::identity(p.rows()).sub(p)
}

/// Basis of `{ x : A x = 0 }` read off the reduced row echelon form. Pivots
/// are the largest-modulus candidates; in float mode entries within the
/// tolerance count as zero.
pub fn nullspace<T: Scalar>(a: &ComplexMatrix<T>) -> Vec<Vec<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut r: Vec<Vec<T>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let best = (row..m)
            .filter(|&i| !r[i][col].vanishes())
            .max_by(|&i, &j| r[i][col].abs_sqr_f64().total_cmp(&r[j][col].abs_sqr_f64()));
        let Some(p) = best else { continue };
        r.swap(row, p);
        let inv = T::one() / r[row][col].clone();
        r[row] = scale_vec(&r[row], &inv);
        for i in 0..m {
            if i != row && !r[i][col].vanishes() {
                let f = r[i][col].clone();
                r[i] = sub_vec(&r[i], &scale_vec(&r[row], &f));
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![T::zero(); n];
            x[free] = T::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -r[i][free].clone();
            }
            x
        })
        .collect()
}
