//! Dense complex matrices and vectors.

use num_complex::Complex64;

use super::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        ComplexMatrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ComplexMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// `u vᴴ`
    pub fn outer(u: &[T], v: &[T]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i].clone() * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone())
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes differ");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols).clone() * other.get(i % other.rows, j % other.cols).clone()
        })
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length differs");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone()))
            .collect()
    }

    /// Entrywise equality, exact or within the float tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.data.iter().zip(&other.data).all(|(a, b)| a.near(b))
    }

    pub fn vanishes(&self) -> bool {
        self.data.iter().all(Scalar::vanishes)
    }

    /// `P² = P` and `P† = P`.
    pub fn is_projector(&self) -> bool {
        self.is_square() && self.mul(self).approx_eq(self) && self.adjoint().approx_eq(self)
    }

    /// `AB − BA`
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.abs_sqr_f64().sqrt()).fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> ComplexMatrix<Complex64> {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_c64).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

/// `⟨u, v⟩`, antilinear in the first slot.
pub fn inner<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
}

pub fn norm_sqr<T: Scalar>(u: &[T]) -> T {
    inner(u, u)
}

pub fn is_zero_vector<T: Scalar>(u: &[T]) -> bool {
    u.iter().all(Scalar::vanishes)
}

pub fn scale_vec<T: Scalar>(u: &[T], s: &T) -> Vec<T> {
    u.iter().map(|a| a.clone() * s.clone()).collect()
}

pub fn add_vec<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn sub_vec<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect()
}

/// `u ⊗ v`
pub fn kron_vec<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().flat_map(|a| v.iter().map(move |b| a.clone() * b.clone())).collect()
}

/// Canonical basis vector `e_k` of length `n`.
pub fn basis_vector<T: Scalar>(n: usize, k: usize) -> Vec<T> {
    (0..n).map(|i| if i == k { T::one() } else { T::zero() }).collect()
}
