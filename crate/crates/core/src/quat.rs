//! Quaternions over a generic scalar ring.
//!
//! `Quaternion<f64>` is the numeric workhorse; `Quaternion<Ratio<i64>>`
//! backs the exact basis checks. Quaternion matrices are `Mat<Quaternion<T>>`
//! (see [`crate::mat`]); the complex picture of a quaternion matrix lives in
//! [`crate::mat::theta_h`].

use crate::scalar::{FieldScalar, Magnitude, Scalar};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `w + x i + y j + z k` with `i^2 = j^2 = k^2 = ijk = -1`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: T) -> Self {
        Quaternion::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Quaternion::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conjugate(&self) -> Self {
        Quaternion::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    pub fn norm_sqr(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    /// True when the j and k parts vanish (entry lies in the complex subfield).
    pub fn is_complex(&self) -> bool {
        self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl Quaternion<f64> {
    pub fn to_complex(&self) -> num_complex::Complex<f64> {
        num_complex::Complex::new(self.w, self.x)
    }

    /// The (z, w) pair of `q = z + w j` with z, w complex.
    pub fn complex_pair(&self) -> (num_complex::Complex<f64>, num_complex::Complex<f64>) {
        (
            num_complex::Complex::new(self.w, self.x),
            num_complex::Complex::new(self.y, self.z),
        )
    }

    pub fn from_complex_pair(
        z: num_complex::Complex<f64>,
        w: num_complex::Complex<f64>,
    ) -> Self {
        Quaternion::new(z.re, z.im, w.re, w.im)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a.clone() * e.clone()
                - b.clone() * f.clone()
                - c.clone() * g.clone()
                - d.clone() * h.clone(),
            a.clone() * f.clone() + b.clone() * e.clone() + c.clone() * h.clone()
                - d.clone() * g.clone(),
            a.clone() * g.clone() - b.clone() * h.clone()
                + c.clone() * e.clone()
                + d.clone() * f.clone(),
            a * h + b * g - c * f + d * e,
        )
    }
}

impl<T: Scalar> Zero for Quaternion<T> {
    fn zero() -> Self {
        Quaternion::real(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Scalar> One for Quaternion<T> {
    fn one() -> Self {
        Quaternion::real(T::one())
    }
}

impl<T: Scalar> Scalar for Quaternion<T> {
    fn from_i64(v: i64) -> Self {
        Quaternion::real(T::from_i64(v))
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
}

impl Div for Quaternion<f64> {
    type Output = Self;
    // right division: a / b = a b^{-1}
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * FieldScalar::recip(&o)
    }
}

impl FieldScalar for Quaternion<f64> {
    fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let c = self.conjugate();
        Quaternion::new(c.w / n, c.x / n, c.y / n, c.z / n)
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

impl Magnitude for Quaternion<f64> {
    fn mag(&self) -> f64 {
        self.norm()
    }
}
