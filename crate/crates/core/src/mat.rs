//! Small dense matrices over a generic scalar.
//!
//! Sizes here top out at 32x32, so the implementation favours clarity over
//! blocking tricks: row-major `Vec`, O(n^3) products, elimination-based
//! inverse/determinant, and a scaling-and-squaring exponential.

use crate::error::Error;
use crate::quat::Quaternion;
use crate::scalar::{FieldScalar, Magnitude, Scalar};
use num_complex::Complex;

use std::ops::{Index, IndexMut};

pub type CMat = Mat<Complex<f64>>;
pub type QMat = Mat<Quaternion<f64>>;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
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

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    /// Left scalar multiple `s * M` (order matters for quaternion entries).
    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| s.clone() * a.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * o[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Conjugate transpose (`*` in the quaternionic and complex cases).
    pub fn conj_transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut t = T::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    /// Kronecker product. Entry order is `self[(i,j)] * o[(k,l)]`, which keeps
    /// quaternion-by-real and real-by-quaternion tensors well defined.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out[(i * o.rows + k, j * o.cols + l)] =
                            self[(i, j)].clone() * o[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, o: &Self) -> Self {
        let mut out = Mat::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                out[(self.rows + i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        out
    }

    /// 2x2 block assembly `[[a, b], [c, d]]` of equally sized blocks.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        assert!(
            [b, c, d].iter().all(|m| m.rows == n && m.cols == n) && a.cols == n,
            "block2 expects four equal square blocks"
        );
        Mat::from_fn(2 * n, 2 * n, |i, j| {
            match (i < n, j < n) {
                (true, true) => a[(i, j)].clone(),
                (true, false) => b[(i, j - n)].clone(),
                (false, true) => c[(i - n, j)].clone(),
                (false, false) => d[(i - n, j - n)].clone(),
            }
        })
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Mat::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])].clone()
        })
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar + FieldScalar> Mat<T> {
    /// Determinant by Gaussian elimination with pivot-weight selection.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .pivot_weight()
                        .partial_cmp(&a[(r2, col)].pivot_weight())
                        .unwrap()
                })
                .unwrap();
            if a[(pivot, col)].is_zero() || a[(pivot, col)].pivot_weight() == 0.0 {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            let pinv = p.recip();
            for r in col + 1..n {
                // factor eliminating a[(r, col)]; left-multiplications only,
                // so this stays valid for quaternion entries
                let f = a[(r, col)].clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                }
            }
        }
        det
    }

    /// Inverse by row reduction of `[A | I]`. Valid over division rings.
    pub fn inverse(&self) -> Result<Self, Error> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Mat<T> = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .pivot_weight()
                        .partial_cmp(&a[(r2, col)].pivot_weight())
                        .unwrap()
                })
                .unwrap();
            if a[(pivot, col)].pivot_weight() == 0.0 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = a[(col, col)].recip();
            for j in 0..n {
                a[(col, j)] = pinv.clone() * a[(col, j)].clone();
                inv[(col, j)] = pinv.clone() * inv[(col, j)].clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }
}

impl<T: Scalar + Magnitude> Mat<T> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.mag()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }
}

/// Float-backed field scalars (the types `expm` makes sense for).
pub trait FloatScalar: Scalar + FieldScalar + Magnitude {
    fn from_f64(v: f64) -> Self;
}

impl FloatScalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl FloatScalar for Complex<f64> {
    fn from_f64(v: f64) -> Self {
        Complex::new(v, 0.0)
    }
}

impl FloatScalar for Quaternion<f64> {
    fn from_f64(v: f64) -> Self {
        Quaternion::real(v)
    }
}

impl<T: FloatScalar> Mat<T> {
    /// Matrix exponential: argument scaling to norm <= 1/4, Taylor series to
    /// machine tail, repeated squaring. Accurate to ~1e-14 at our sizes.
    pub fn expm(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let norm = self.max_abs() * n as f64;
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.25 {
            scale *= 0.5;
            squarings += 1;
        }
        let a = self.scale(&T::from_f64(scale));
        let mut term = Mat::<T>::identity(n);
        let mut sum = Mat::<T>::identity(n);
        for k in 1..64 {
            term = term.mul(&a).scale(&T::from_f64(1.0 / k as f64));
            sum = sum.add(&term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        let mut out = sum;
        for _ in 0..squarings {
            out = out.mul(&out);
        }
        out
    }
}

impl Mat<f64> {
    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && self.max_diff(&self.transpose()) <= tol
    }

    /// Leading principal minors, `det(A[..k, ..k])` for k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<f64> {
        assert!(self.is_square());
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.submatrix(&idx, &idx).det()
            })
            .collect()
    }

    /// Symmetric positive definiteness via leading principal minors.
    pub fn is_posdef_sym(&self, tol: f64) -> bool {
        self.is_symmetric(tol) && self.leading_principal_minors().iter().all(|&m| m > tol)
    }

    pub fn to_complex(&self) -> CMat {
        self.map(|v| Complex::new(*v, 0.0))
    }

    pub fn to_quat(&self) -> QMat {
        self.map(|v| Quaternion::real(*v))
    }
}

impl CMat {
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_diff(&self.conj_transpose()) <= tol
    }

    /// Hermitian positive definiteness via leading principal minors
    /// (their imaginary parts must vanish and real parts be positive).
    pub fn is_posdef_hermitian(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        (1..=self.rows).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            let d = self.submatrix(&idx, &idx).det();
            d.im.abs() <= tol && d.re > tol
        })
    }

    pub fn real_part(&self) -> Mat<f64> {
        self.map(|v| v.re)
    }
}

impl QMat {
    /// Promote a quaternion matrix with complex entries to `Mat<Complex>`.
    pub fn to_complex_strict(&self) -> Option<CMat> {
        if self.iter().all(|q| q.is_complex()) {
            Some(self.map(|q| q.to_complex()))
        } else {
            None
        }
    }

    pub fn real_part_strict(&self, tol: f64) -> Option<Mat<f64>> {
        if self
            .iter()
            .all(|q| q.x.abs() <= tol && q.y.abs() <= tol && q.z.abs() <= tol)
        {
            Some(self.map(|q| q.w))
        } else {
            None
        }
    }
}

/// Real part of the trace of a quaternion matrix. Satisfies the cyclic
/// invariance `Re Tr(XY) = Re Tr(YX)` that the plain quaternion trace lacks.
pub fn re_trace(x: &QMat) -> f64 {
    assert!(x.is_square());
    (0..x.rows()).map(|i| x[(i, i)].w).sum()
}

/// Complex picture of a quaternion matrix: `X = Z + W j` maps to the
/// 2n x 2n block matrix `[[Z, W], [-conj(W), conj(Z)]]`.
pub fn theta_h(x: &QMat) -> CMat {
    let n = x.rows();
    let m = x.cols();
    let mut out = CMat::zeros(2 * n, 2 * m);
    for i in 0..n {
        for j in 0..m {
            let (z, w) = x[(i, j)].complex_pair();
            out[(i, j)] = z;
            out[(i, j + m)] = w;
            out[(i + n, j)] = -w.conj();
            out[(i + n, j + m)] = z.conj();
        }
    }
    out
}

/// True when the complex matrix has the `[[Z, W], [-conj(W), conj(Z)]]` block
/// structure, i.e. lies in the image of [`theta_h`].
pub fn is_theta_h(m: &CMat, tol: f64) -> bool {
    if m.rows() != m.cols() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let n = m.rows() / 2;
    for i in 0..n {
        for j in 0..n {
            if (m[(i + n, j + n)] - m[(i, j)].conj()).norm() > tol {
                return false;
            }
            if (m[(i + n, j)] + m[(i, j + n)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Inverse of [`theta_h`]; fails when the block structure is absent.
pub fn from_theta_h(m: &CMat, tol: f64) -> Result<QMat, Error> {
    if !is_theta_h(m, tol) {
        return Err(Error::Precondition(
            "matrix lacks the theta_H block structure".into(),
        ));
    }
    let n = m.rows() / 2;
    Ok(QMat::from_fn(n, n, |i, j| {
        Quaternion::from_complex_pair(m[(i, j)], m[(i, j + n)])
    }))
}

/// Quaternion matrix exponential, evaluated on the complex picture.
///
/// A quadratic annihilating polynomial (`X^2 = c I`) is used in closed form
/// when detected; otherwise scaling and squaring on the theta_H image.
pub fn quat_exp(x: &QMat) -> QMat {
    assert!(x.is_square());
    let n = x.rows();
    let x2 = x.mul(x);
    let c = re_trace(&x2) / n as f64;
    let mut ci = QMat::identity(n);
    ci = ci.scale(&Quaternion::real(c));
    let scale = x.max_abs().max(1.0);
    if x2.max_diff(&ci) <= 1e-13 * scale * scale && c.abs() > 1e-8 {
        let id = QMat::identity(n);
        if c > 0.0 {
            let l = c.sqrt();
            return id
                .scale(&Quaternion::real(l.cosh()))
                .add(&x.scale(&Quaternion::real(l.sinh() / l)));
        } else {
            let l = (-c).sqrt();
            return id
                .scale(&Quaternion::real(l.cos()))
                .add(&x.scale(&Quaternion::real(l.sin() / l)));
        }
    }
    let e = theta_h(x).expm();
    from_theta_h(&e, 1e-9 * e.max_abs().max(1.0)).expect("exp preserves the theta_H subalgebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: Vec<Vec<Quaternion<f64>>>) -> QMat {
        Mat::from_rows(rows)
    }

    #[test]
    fn theta_h_of_identity() {
        let id = QMat::identity(3);
        assert_eq!(theta_h(&id), CMat::identity(6));
    }

    #[test]
    fn theta_h_of_j_scalar() {
        // 1x1 matrix (j) -> [[0, 1], [-1, 0]]
        let m = qm(vec![vec![Quaternion::j()]]);
        let t = theta_h(&m);
        let expect = CMat::from_rows(vec![
            vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
            vec![Complex::new(-1.0, 0.0), Complex::new(0.0, 0.0)],
        ]);
        assert!(t.max_diff(&expect) < 1e-15);
        assert!(is_theta_h(&t, 1e-12));
    }

    #[test]
    fn theta_h_multiplicative_and_star() {
        let a = qm(vec![
            vec![Quaternion::new(0.3, -1.0, 0.2, 0.7), Quaternion::new(1.0, 0.5, -0.4, 0.0)],
            vec![Quaternion::new(-0.8, 0.1, 0.9, -0.3), Quaternion::new(0.6, 0.0, 1.2, 0.4)],
        ]);
        let b = qm(vec![
            vec![Quaternion::new(-0.2, 0.4, 1.1, -0.6), Quaternion::new(0.9, -0.3, 0.0, 0.8)],
            vec![Quaternion::new(0.5, 0.7, -0.2, 0.1), Quaternion::new(-1.0, 0.2, 0.3, -0.5)],
        ]);
        assert!(theta_h(&a.mul(&b)).max_diff(&theta_h(&a).mul(&theta_h(&b))) < 1e-12);
        assert!(theta_h(&a.conj_transpose()).max_diff(&theta_h(&a).conj_transpose()) < 1e-12);
    }

    #[test]
    fn re_trace_examples() {
        assert_eq!(re_trace(&QMat::identity(4)), 4.0);
        // X = (i), Y = (j): both Re Tr(XY) and Re Tr(YX) vanish
        let x = qm(vec![vec![Quaternion::i()]]);
        let y = qm(vec![vec![Quaternion::j()]]);
        assert_eq!(re_trace(&x.mul(&y)), 0.0);
        assert_eq!(re_trace(&y.mul(&x)), 0.0);
    }

    #[test]
    fn quat_exp_zero_and_diag() {
        assert!(quat_exp(&QMat::zeros(3, 3)).max_diff(&QMat::identity(3)) < 1e-15);
        let mut d = QMat::zeros(2, 2);
        d[(0, 0)] = Quaternion::real(0.7);
        d[(1, 1)] = Quaternion::real(-0.2);
        let e = quat_exp(&d);
        assert!((e[(0, 0)].w - 0.7f64.exp()).abs() < 1e-12);
        assert!((e[(1, 1)].w - (-0.2f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn quat_exp_closed_form_matches_series() {
        // symmetric traceless 2x2 with lambda = sqrt(0.3^2 + 0.4^2) = 0.5
        let l = qm(vec![
            vec![Quaternion::real(0.3), Quaternion::real(0.4)],
            vec![Quaternion::real(0.4), Quaternion::real(-0.3)],
        ]);
        let e = quat_exp(&l);
        let lam: f64 = 0.5;
        let expect = QMat::identity(2)
            .scale(&Quaternion::real(lam.cosh()))
            .add(&l.scale(&Quaternion::real(lam.sinh() / lam)));
        assert!(e.max_diff(&expect) < 1e-12);
        // the theta_H route agrees
        let via_theta = from_theta_h(&theta_h(&l).expm(), 1e-9).unwrap();
        assert!(e.max_diff(&via_theta) < 1e-12);
    }

    #[test]
    fn exp_of_hermitian_is_posdef() {
        let h = qm(vec![
            vec![Quaternion::real(0.4), Quaternion::new(0.1, 0.2, -0.3, 0.5)],
            vec![Quaternion::new(0.1, -0.2, 0.3, -0.5), Quaternion::real(-0.6)],
        ]);
        assert!(theta_h(&h).is_hermitian(1e-12));
        let e = quat_exp(&h);
        assert!(theta_h(&e).is_posdef_hermitian(1e-10));
    }

    #[test]
    fn inverse_of_quaternion_matrix() {
        let a = qm(vec![
            vec![Quaternion::new(1.0, 0.5, -0.2, 0.3), Quaternion::new(0.0, 1.0, 0.4, -0.1)],
            vec![Quaternion::new(0.2, -0.7, 1.1, 0.0), Quaternion::new(0.9, 0.0, -0.5, 0.6)],
        ]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).max_diff(&QMat::identity(2)) < 1e-12);
        assert!(inv.mul(&a).max_diff(&QMat::identity(2)) < 1e-12);
    }

    #[test]
    fn expm_against_rotation() {
        let mut g = Mat::<f64>::zeros(2, 2);
        g[(0, 1)] = -1.3;
        g[(1, 0)] = 1.3;
        let e = g.expm();
        assert!((e[(0, 0)] - 1.3f64.cos()).abs() < 1e-13);
        assert!((e[(1, 0)] - 1.3f64.sin()).abs() < 1e-13);
    }
}
