//! Field of matrix entries: exact Gaussian rationals or double-precision
//! complex numbers compared with a tolerance.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Tolerance for float comparisons and rank decisions.
pub const EPS: f64 = 1e-9;

/// Exact complex numbers with rational real and imaginary parts.
pub type Exact = Complex<BigRational>;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality decisions are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// `re_num/re_den + i·im_num/im_den`; denominators are non-zero.
    fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self;
    fn conj(&self) -> Self;
    /// `|z|²` as a float, for pivot selection and reporting.
    fn abs_sqr_f64(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// Exactly zero, or within [`EPS`] of zero in float mode.
    fn vanishes(&self) -> bool;

    fn near(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).vanishes()
    }

    fn int(n: i64) -> Self {
        Self::gaussian(n, 1, 0, 1)
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(1)), BigRational::zero())
    }

    fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn abs_sqr_f64(&self) -> f64 {
        self.norm_sqr().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn vanishes(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Complex64::new(re_num as f64 / re_den as f64, im_num as f64 / im_den as f64)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn abs_sqr_f64(&self) -> f64 {
        self.norm_sqr()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn vanishes(&self) -> bool {
        self.norm() < EPS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_construction() {
        let z = Exact::gaussian(1, 2, -3, 4);
        assert_eq!(z.to_c64(), Complex64::new(0.5, -0.75));
        assert_eq!(z.clone() * z.conj(), Exact::gaussian(13, 16, 0, 1));
        assert!(!z.vanishes());
        assert!((z.clone() - z).vanishes());
    }

    #[test]
    fn float_tolerance() {
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(1.0 + 1e-12, 0.0);
        assert!(a.near(&b));
        assert!(!a.near(&Complex64::new(1.0 + 1e-6, 0.0)));
        assert!(<Complex64 as Scalar>::zero().vanishes());
    }
}
