//! Scalar traits shared by the matrix and multivector code.
//!
//! Everything downstream is generic over a commutative-looking ring interface;
//! quaternions implement the same interface (multiplication order is respected
//! throughout, so non-commutativity is safe). Two instantiations matter:
//! `f64` for numerics and `Ratio<i64>` / `Ratio<i128>` for the exact checks.

use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Ring scalar usable as a matrix or multivector coefficient.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(v: i64) -> Self;

    /// Conjugation; identity for real scalar types.
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

impl Scalar for num_complex::Complex<f64> {
    fn from_i64(v: i64) -> Self {
        num_complex::Complex::new(v as f64, 0.0)
    }
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }
}

/// Division scalar with a pivot weight, enough for Gaussian elimination.
///
/// `recip` must be a two-sided inverse (holds in every division ring we use).
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn recip(&self) -> Self;
    /// Magnitude used for pivot selection; any monotone proxy works.
    fn pivot_weight(&self) -> f64;
}

impl FieldScalar for f64 {
    fn recip(&self) -> Self {
        1.0 / self
    }
    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
}

impl FieldScalar for num_complex::Complex<f64> {
    fn recip(&self) -> Self {
        self.inv()
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

impl FieldScalar for Ratio<i64> {
    fn recip(&self) -> Self {
        num_traits::Inv::inv(self)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl FieldScalar for Ratio<i128> {
    fn recip(&self) -> Self {
        num_traits::Inv::inv(self)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// Scalars with a floating-point magnitude (for residual norms).
pub trait Magnitude {
    fn mag(&self) -> f64;
}

impl Magnitude for f64 {
    fn mag(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude for num_complex::Complex<f64> {
    fn mag(&self) -> f64 {
        self.norm()
    }
}
