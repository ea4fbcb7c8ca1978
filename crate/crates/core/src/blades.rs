//! Dense multivectors over the 2^n blade basis of Cl(p,q).
//!
//! A blade is a bitmask over the generators (bit k is `e_{k+1}`), coefficients
//! are stored for every mask. Products are computed by transposition counting
//! on index merges, which is exact for any coefficient ring.

use crate::error::Error;
use crate::group::Signature;
use crate::mat::{Mat, QMat};
use crate::scalar::Scalar;


/// Sign and resulting mask of the product `e_a * e_b` of two basis blades.
///
/// The sign counts the transpositions needed to interleave the index lists
/// plus a metric sign for every repeated generator.
pub fn blade_mul(a_mask: u32, b_mask: u32, sig: Signature) -> (i8, u32) {
    let mut sign: i8 = 1;
    let mut acc = a_mask;
    for k in 0..sig.n() as u32 {
        if (b_mask >> k) & 1 == 0 {
            continue;
        }
        let above = (acc >> (k + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        if (acc >> k) & 1 == 1 {
            if k as usize >= sig.p {
                sign = -sign;
            }
            acc &= !(1 << k);
        } else {
            acc |= 1 << k;
        }
    }
    (sign, acc)
}

#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<T> {
    sig: Signature,
    coeffs: Vec<T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            coeffs: vec![T::zero(); 1 << sig.n()],
        }
    }

    pub fn scalar(sig: Signature, v: T) -> Self {
        let mut m = Multivector::zero(sig);
        m.coeffs[0] = v;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Multivector::scalar(sig, T::one())
    }

    /// A single blade `v * e_{i1} ... e_{ik}` given ascending 1-based indices.
    pub fn blade(sig: Signature, indices: &[usize], v: T) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!(1 <= i && i <= sig.n(), "blade index out of range");
            assert!(mask & (1 << (i - 1)) == 0, "repeated blade index");
            mask |= 1 << (i - 1);
        }
        let mut m = Multivector::zero(sig);
        m.coeffs[mask as usize] = v;
        m
    }

    pub fn basis_vector(sig: Signature, i: usize) -> Self {
        Multivector::blade(sig, &[i], T::one())
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeff(&self, mask: u32) -> &T {
        &self.coeffs[mask as usize]
    }

    pub fn coeff_mut(&mut self, mask: u32) -> &mut T {
        &mut self.coeffs[mask as usize]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.sig, o.sig);
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|a| s.clone() * a.clone()).collect(),
        }
    }

    pub fn geometric_product(&self, o: &Self) -> Result<Self, Error> {
        if self.sig != o.sig {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                self.sig, o.sig
            )));
        }
        let mut out: Multivector<T> = Multivector::zero(self.sig);
        for (am, av) in self.coeffs.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            for (bm, bv) in o.coeffs.iter().enumerate() {
                if bv.is_zero() {
                    continue;
                }
                let (sign, mask) = blade_mul(am as u32, bm as u32, self.sig);
                let term = av.clone() * bv.clone();
                let cur = out.coeffs[mask as usize].clone();
                out.coeffs[mask as usize] = if sign > 0 { cur + term } else { cur - term };
            }
        }
        Ok(out)
    }

    /// Grade-k part scaled by `(-1)^{k(k-1)/2}`; an anti-automorphism.
    pub fn reversion(&self) -> Self {
        self.graded_signs(|k| !(k * (k.wrapping_sub(1)) / 2).is_multiple_of(2))
    }

    /// Grade-k part scaled by `(-1)^k`; an automorphism.
    pub fn grade_involution(&self) -> Self {
        self.graded_signs(|k| !k.is_multiple_of(2))
    }

    /// Composition of reversion and grade involution.
    pub fn clifford_conjugate(&self) -> Self {
        self.reversion().grade_involution()
    }

    fn graded_signs(&self, negate: impl Fn(u32) -> bool) -> Self {
        let mut out = self.clone();
        for (mask, v) in out.coeffs.iter_mut().enumerate() {
            if negate((mask as u32).count_ones()) {
                *v = -v.clone();
            }
        }
        out
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let mut out = self.clone();
        for (mask, v) in out.coeffs.iter_mut().enumerate() {
            if (mask as u32).count_ones() != k {
                *v = T::zero();
            }
        }
        out
    }

    pub fn scalar_part(&self) -> T {
        self.coeffs[0].clone()
    }

    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, v)| (mask as u32).count_ones().is_multiple_of(2) || v.is_zero())
    }

    /// The single nonzero blade `(mask, coeff)` if there is exactly one.
    pub fn single_blade(&self) -> Option<(u32, T)> {
        let mut found = None;
        for (mask, v) in self.coeffs.iter().enumerate() {
            if !v.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((mask as u32, v.clone()));
            }
        }
        found
    }
}

impl<T: Scalar + std::ops::Div<Output = T>> Multivector<T> {
    /// Inverse of a nonzero scalar multiple of a single blade.
    ///
    /// Blade squares are +-1, so the inverse is `e_mask / (c * sign)`.
    pub fn blade_inverse(&self) -> Result<Self, Error> {
        let (mask, c) = self
            .single_blade()
            .ok_or_else(|| Error::Precondition("input is not a single blade".into()))?;
        let (sign, sq_mask) = blade_mul(mask, mask, self.sig);
        debug_assert_eq!(sq_mask, 0);
        let mut out: Multivector<T> = Multivector::zero(self.sig);
        let denom = if sign > 0 { c.clone() } else { -c.clone() };
        out.coeffs[mask as usize] = T::one() / denom;
        Ok(out)
    }
}

impl Multivector<f64> {
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }

    /// Largest coefficient magnitude outside grade `k`.
    pub fn off_grade_residual(&self, k: u32) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(mask, _)| (*mask as u32).count_ones() != k)
            .fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    /// Matrix of the conjugation action `v -> x v cc(x)` on one-vectors,
    /// computed entirely inside the blade algebra. Fails when the action
    /// leaves the one-vector space by more than `tol`.
    pub fn conjugation_action(&self, tol: f64) -> Result<Mat<f64>, Error> {
        let n = self.sig.n();
        let cc = self.clifford_conjugate();
        let mut out = Mat::zeros(n, n);
        for j in 0..n {
            let ej = Multivector::basis_vector(self.sig, j + 1);
            let col = self.geometric_product(&ej)?.geometric_product(&cc)?;
            let residual = col.off_grade_residual(1);
            if residual > tol {
                return Err(Error::Precondition(format!(
                    "conjugation action leaves grade one (residual {residual:.3e})"
                )));
            }
            for i in 0..n {
                out[(i, j)] = *col.coeff(1 << i);
            }
        }
        Ok(out)
    }

    /// Evaluate the blade expansion in a concrete representation:
    /// substitutes the representation matrix of every blade.
    pub fn matrix_rep(&self, rep: &BladeRep) -> QMat {
        assert_eq!(self.sig, rep.sig, "representation signature mismatch");
        let mut out = QMat::zeros(rep.dim, rep.dim);
        for (mask, v) in self.coeffs.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            out = out.add(&rep.blade_mats[mask].scale(&crate::quat::Quaternion::real(*v)));
        }
        out
    }
}

/// Cached representation matrices for every blade of a one-vector basis.
pub struct BladeRep {
    pub sig: Signature,
    pub dim: usize,
    pub blade_mats: Vec<QMat>,
}

impl BladeRep {
    /// Build from the generator matrices; blade masks multiply in ascending
    /// index order.
    pub fn new(sig: Signature, generators: &[QMat]) -> Self {
        assert_eq!(generators.len(), sig.n());
        let dim = if sig.n() == 0 { 1 } else { generators[0].rows() };
        let count = 1usize << sig.n();
        let mut blade_mats = Vec::with_capacity(count);
        blade_mats.push(QMat::identity(dim));
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let m = if rest == 0 {
                generators[low].clone()
            } else {
                // lowest generator times the remaining ascending product
                generators[low].clone().mul(&blade_mats[mask & !(1 << low)])
            };
            blade_mats.push(m);
        }
        BladeRep {
            sig,
            dim,
            blade_mats,
        }
    }

    pub fn generators(&self) -> Vec<QMat> {
        (0..self.sig.n())
            .map(|i| self.blade_mats[1 << i].clone())
            .collect()
    }
}
