//! The covering maps Spin+(p,q) -> SO+(p,q) in concrete matrix form, their
//! linearizations, and the basis-driven generic realization of both.
//!
//! Spin elements carry the compact representation of their signature: 2x2
//! real for (2,1), a pair of 2x2 real for (2,2), 4x4 real for (3,2), 2x2
//! quaternionic for (4,1). `embed` maps each into the full Clifford
//! representation where the conjugation action is evaluated.

use crate::bases;
use crate::blades::BladeRep;
use crate::error::Error;
use crate::group::{metric, Signature};
use crate::mat::{from_theta_h, re_trace, theta_h, CMat, Mat, QMat};
use crate::quat::Quaternion;
use once_cell::sync::Lazy;

/// Cached float representation (all blade matrices) of a cataloged basis.
pub fn cached_rep(sig: Signature) -> Result<&'static BladeRep, Error> {
    static REPS: Lazy<Vec<(Signature, BladeRep)>> = Lazy::new(|| {
        [(1, 1), (2, 1), (2, 2), (3, 2), (4, 1)]
            .into_iter()
            .map(|(p, q)| {
                let sig = Signature::new(p, q);
                (sig, bases::basis_for(sig).unwrap().blade_rep())
            })
            .collect()
    });
    REPS.iter()
        .find(|(s, _)| *s == sig)
        .map(|(_, r)| r)
        .ok_or(Error::NotCataloged(sig.p, sig.q))
}

fn cmat_to_qmat(m: &CMat) -> QMat {
    m.map(|c| Quaternion::new(c.re, c.im, 0.0, 0.0))
}

// ---------------------------------------------------------------- elements

/// An element of the spin group in the compact representation of its
/// signature.
#[derive(Clone, Debug)]
pub enum SpinElement {
    /// SL(2,R), the double cover of SO+(2,1).
    S21(Mat<f64>),
    /// SL(2,R) x SL(2,R) for SO+(2,2).
    S22(Mat<f64>, Mat<f64>),
    /// 4x4 real with `Y^T M Y = M`, `M = [[0, J],[J, 0]]`, for SO+(3,2).
    S32(Mat<f64>),
    /// 2x2 quaternionic with `X* M X = M` on the complex picture,
    /// `M = J (+) -J`, for SO+(4,1).
    S41(QMat),
}

/// The invariant antisymmetric form preserved by Spin+(3,2).
pub fn spin32_form() -> Mat<f64> {
    let mut m = Mat::zeros(4, 4);
    m[(0, 3)] = 1.0;
    m[(1, 2)] = -1.0;
    m[(2, 1)] = 1.0;
    m[(3, 0)] = -1.0;
    m
}

/// The form preserved by the complex picture of Spin+(4,1).
pub fn spin41_form() -> CMat {
    let j = Mat::from_rows(vec![
        vec![num_complex::Complex::new(0.0, 0.0), num_complex::Complex::new(1.0, 0.0)],
        vec![num_complex::Complex::new(-1.0, 0.0), num_complex::Complex::new(0.0, 0.0)],
    ]);
    j.block_diag(&j.neg())
}

impl SpinElement {
    pub fn signature(&self) -> Signature {
        match self {
            SpinElement::S21(_) => Signature::new(2, 1),
            SpinElement::S22(..) => Signature::new(2, 2),
            SpinElement::S32(_) => Signature::new(3, 2),
            SpinElement::S41(_) => Signature::new(4, 1),
        }
    }

    pub fn identity(sig: Signature) -> Result<Self, Error> {
        Ok(match (sig.p, sig.q) {
            (2, 1) => SpinElement::S21(Mat::identity(2)),
            (2, 2) => SpinElement::S22(Mat::identity(2), Mat::identity(2)),
            (3, 2) => SpinElement::S32(Mat::identity(4)),
            (4, 1) => SpinElement::S41(QMat::identity(2)),
            _ => return Err(Error::Unsupported(format!("no spin representation for {sig}"))),
        })
    }

    /// Check the defining invariant of the representation.
    pub fn validate(&self, tol: f64) -> Result<(), Error> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        match self {
            SpinElement::S21(y) => {
                let det = y[(0, 0)] * y[(1, 1)] - y[(0, 1)] * y[(1, 0)];
                if (det - 1.0).abs() > tol {
                    return fail(format!("det = {det:.6e}, expected 1"));
                }
            }
            SpinElement::S22(a, b) => {
                for (name, m) in [("first", a), ("second", b)] {
                    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                    if (det - 1.0).abs() > tol {
                        return fail(format!("{name} factor det = {det:.6e}, expected 1"));
                    }
                }
            }
            SpinElement::S32(y) => {
                let m = spin32_form();
                let r = y.transpose().mul(&m).mul(y).max_diff(&m);
                if r > tol {
                    return fail(format!("Y^T M Y - M residual {r:.3e}"));
                }
            }
            SpinElement::S41(y) => {
                let t = theta_h(y);
                let m = spin41_form();
                let r = t.conj_transpose().mul(&m).mul(&t).max_diff(&m);
                if r > tol {
                    return fail(format!("X* M X - M residual {r:.3e}"));
                }
            }
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        match self {
            SpinElement::S21(y) => SpinElement::S21(y.neg()),
            SpinElement::S22(a, b) => SpinElement::S22(a.neg(), b.neg()),
            SpinElement::S32(y) => SpinElement::S32(y.neg()),
            SpinElement::S41(y) => SpinElement::S41(y.neg()),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, Error> {
        Ok(match (self, o) {
            (SpinElement::S21(a), SpinElement::S21(b)) => SpinElement::S21(a.mul(b)),
            (SpinElement::S22(a1, a2), SpinElement::S22(b1, b2)) => {
                SpinElement::S22(a1.mul(b1), a2.mul(b2))
            }
            (SpinElement::S32(a), SpinElement::S32(b)) => SpinElement::S32(a.mul(b)),
            (SpinElement::S41(a), SpinElement::S41(b)) => SpinElement::S41(a.mul(b)),
            _ => {
                return Err(Error::SignatureMismatch(format!(
                    "{} vs {}",
                    self.signature(),
                    o.signature()
                )))
            }
        })
    }

    /// Row-major entry list; quaternion entries flatten to (w, x, y, z).
    pub fn flat_entries(&self) -> Vec<f64> {
        match self {
            SpinElement::S21(y) => y.iter().copied().collect(),
            SpinElement::S22(a, b) => a.iter().chain(b.iter()).copied().collect(),
            SpinElement::S32(y) => y.iter().copied().collect(),
            SpinElement::S41(y) => y
                .iter()
                .flat_map(|q| [q.w, q.x, q.y, q.z])
                .collect(),
        }
    }

    /// Canonical representative of {+Y, -Y}: the first entry larger than
    /// `tol` in magnitude (row-major scan) is made positive.
    pub fn canonical_sign(&self, tol: f64) -> Self {
        for v in self.flat_entries() {
            if v.abs() > tol {
                return if v < 0.0 { self.neg() } else { self.clone() };
            }
        }
        self.clone()
    }

    pub fn max_diff(&self, o: &Self) -> f64 {
        self.flat_entries()
            .iter()
            .zip(o.flat_entries())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Embed into the full Clifford representation (multiplicative).
    pub fn rep_matrix(&self) -> QMat {
        match self {
            SpinElement::S21(y) => embed_21(y).to_quat(),
            SpinElement::S22(a, b) => embed_22(a, b).to_quat(),
            SpinElement::S32(y) => embed_32(y).to_quat(),
            SpinElement::S41(y) => cmat_to_qmat(&theta_h(y)),
        }
    }

    /// Extract the compact element back out of a full-representation matrix.
    pub fn from_rep(sig: Signature, m: &QMat, tol: f64) -> Result<Self, Error> {
        let el = match (sig.p, sig.q) {
            (2, 1) => {
                let r = m
                    .real_part_strict(tol)
                    .ok_or_else(|| Error::Precondition("expected a real matrix".into()))?;
                SpinElement::S21(extract_21(&r, tol)?)
            }
            (2, 2) => {
                let r = m
                    .real_part_strict(tol)
                    .ok_or_else(|| Error::Precondition("expected a real matrix".into()))?;
                let (a, b) = extract_22(&r, tol)?;
                SpinElement::S22(a, b)
            }
            (3, 2) => {
                let r = m
                    .real_part_strict(tol)
                    .ok_or_else(|| Error::Precondition("expected a real matrix".into()))?;
                SpinElement::S32(extract_32(&r, tol)?)
            }
            (4, 1) => {
                let c = m
                    .to_complex_strict()
                    .ok_or_else(|| Error::Precondition("expected a complex matrix".into()))?;
                SpinElement::S41(from_theta_h(&c, tol)?)
            }
            _ => return Err(Error::Unsupported(format!("no spin representation for {sig}"))),
        };
        Ok(el)
    }

    /// The covering map applied to this element.
    pub fn phi(&self) -> Result<Mat<f64>, Error> {
        match self {
            SpinElement::S21(y) => Ok(phi_21_unchecked(y)),
            SpinElement::S22(a, b) => Ok(phi_22_unchecked(a, b)),
            SpinElement::S32(y) => Ok(phi_32_unchecked(y)),
            SpinElement::S41(y) => phi_41(y),
        }
    }
}

// ------------------------------------------------------------- embeddings

/// Multiplicative embedding of SL(2,R) into the 4x4 representation of
/// Cl(2,1): the even slots carry Y, the odd slots carry `S Y S` with
/// `S = diag(1,-1)`.
pub fn embed_21(y: &Mat<f64>) -> Mat<f64> {
    let mut out = Mat::zeros(4, 4);
    let s = [1.0, -1.0];
    for i in 0..2 {
        for j in 0..2 {
            out[(2 * i, 2 * j)] = y[(i, j)];
            out[(2 * i + 1, 2 * j + 1)] = s[i] * s[j] * y[(i, j)];
        }
    }
    out
}

pub fn extract_21(m: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    let y = Mat::from_fn(2, 2, |i, j| m[(2 * i, 2 * j)]);
    if embed_21(&y).max_diff(m) > tol {
        return Err(Error::Precondition(
            "matrix is not in the embedded image of SL(2,R)".into(),
        ));
    }
    Ok(y)
}

/// Embedding of a pair of SL(2,R) matrices into the 4x4 representation of
/// Cl(2,2): the first factor occupies the corners, the second the middle.
pub fn embed_22(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
    let mut out = Mat::zeros(4, 4);
    out[(0, 0)] = a[(0, 0)];
    out[(0, 3)] = a[(0, 1)];
    out[(3, 0)] = a[(1, 0)];
    out[(3, 3)] = a[(1, 1)];
    out[(1, 1)] = b[(0, 0)];
    out[(1, 2)] = b[(0, 1)];
    out[(2, 1)] = b[(1, 0)];
    out[(2, 2)] = b[(1, 1)];
    out
}

pub fn extract_22(m: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>), Error> {
    let a = Mat::from_rows(vec![
        vec![m[(0, 0)], m[(0, 3)]],
        vec![m[(3, 0)], m[(3, 3)]],
    ]);
    let b = Mat::from_rows(vec![
        vec![m[(1, 1)], m[(1, 2)]],
        vec![m[(2, 1)], m[(2, 2)]],
    ]);
    if embed_22(&a, &b).max_diff(m) > tol {
        return Err(Error::Precondition(
            "matrix is not in the embedded image of SL(2,R) x SL(2,R)".into(),
        ));
    }
    Ok((a, b))
}

/// Interleaving embedding of the 4x4 spin representation into the 8x8
/// representation of Cl(3,2): even slots carry Y, odd slots `S Y S` with
/// `S = diag(1,-1,-1,1)`.
pub fn embed_32(y: &Mat<f64>) -> Mat<f64> {
    let s = [1.0, -1.0, -1.0, 1.0];
    let mut out = Mat::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            out[(2 * i, 2 * j)] = y[(i, j)];
            out[(2 * i + 1, 2 * j + 1)] = s[i] * s[j] * y[(i, j)];
        }
    }
    out
}

pub fn extract_32(m: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    let y = Mat::from_fn(4, 4, |i, j| m[(2 * i, 2 * j)]);
    if embed_32(&y).max_diff(m) > tol {
        return Err(Error::Precondition(
            "matrix is not in the embedded image of Spin+(3,2)".into(),
        ));
    }
    Ok(y)
}

// ------------------------------------------------------- concrete maps

fn phi_21_unchecked(y: &Mat<f64>) -> Mat<f64> {
    let (y1, y2, y3, y4) = (y[(0, 0)], y[(0, 1)], y[(1, 0)], y[(1, 1)]);
    let (s1, s2, s3, s4) = (y1 * y1, y2 * y2, y3 * y3, y4 * y4);
    Mat::from_rows(vec![
        vec![
            1.0 + 2.0 * y2 * y3,
            y2 * y4 - y1 * y3,
            -(y1 * y3 + y2 * y4),
        ],
        vec![
            y3 * y4 - y1 * y2,
            0.5 * (s1 - s2 - s3 + s4),
            0.5 * (s1 + s2 - s3 - s4),
        ],
        vec![
            -(y1 * y2 + y3 * y4),
            0.5 * (s1 - s2 + s3 - s4),
            0.5 * (s1 + s2 + s3 + s4),
        ],
    ])
}

/// SL(2,R) -> SO+(2,1), the quadratic entry table of the covering map.
pub fn phi_21(y: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    SpinElement::S21(y.clone()).validate(tol)?;
    Ok(phi_21_unchecked(y))
}

fn phi_22_unchecked(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
    let (y1, y2, y7, y8) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let (y3, y4, y5, y6) = (b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]);
    let h = 0.5;
    Mat::from_rows(vec![
        vec![
            h * (y2 * y5 + y1 * y6 + y4 * y7 + y3 * y8),
            h * (y2 * y6 - y1 * y5 - y3 * y7 + y4 * y8),
            h * (y1 * y6 - y2 * y5 + y4 * y7 - y3 * y8),
            -h * (y1 * y5 + y2 * y6 + y3 * y7 + y4 * y8),
        ],
        vec![
            h * (y6 * y7 + y5 * y8 - y2 * y3 - y1 * y4),
            h * (y1 * y3 - y2 * y4 - y5 * y7 + y6 * y8),
            h * (y2 * y3 - y1 * y4 + y6 * y7 - y5 * y8),
            h * (y1 * y3 + y2 * y4 - y5 * y7 - y6 * y8),
        ],
        vec![
            h * (y2 * y5 + y1 * y6 - y4 * y7 - y3 * y8),
            h * (y2 * y6 - y1 * y5 + y3 * y7 - y4 * y8),
            h * (y1 * y6 - y2 * y5 - y4 * y7 + y3 * y8),
            h * (y3 * y7 + y4 * y8 - y1 * y5 - y2 * y6),
        ],
        vec![
            -h * (y2 * y3 + y1 * y4 + y6 * y7 + y5 * y8),
            h * (y1 * y3 - y2 * y4 + y5 * y7 - y6 * y8),
            h * (y2 * y3 - y1 * y4 - y6 * y7 + y5 * y8),
            h * (y1 * y3 + y2 * y4 + y5 * y7 + y6 * y8),
        ],
    ])
}

/// SL(2,R) x SL(2,R) -> SO+(2,2), the 16-entry table of the covering map.
pub fn phi_22(a: &Mat<f64>, b: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    SpinElement::S22(a.clone(), b.clone()).validate(tol)?;
    Ok(phi_22_unchecked(a, b))
}

fn phi_32_unchecked(ym: &Mat<f64>) -> Mat<f64> {
    // 1-based aliases mirror the published entry table
    let y = |k: usize| ym[((k - 1) / 4, (k - 1) % 4)];
    let (y1, y2, y3, y4, y5, y6, y7, y8) = (y(1), y(2), y(3), y(4), y(5), y(6), y(7), y(8));
    let (y9, y10, y11, y12, y13, y14, y15, y16) =
        (y(9), y(10), y(11), y(12), y(13), y(14), y(15), y(16));
    let h = 0.5;
    let mut m = Mat::zeros(5, 5);
    m[(0, 0)] = h * (-y10 * y13 - y12 * y15 + y11 * y16 - y2 * y5 + y1 * y6 - y4 * y7
        + y3 * y8
        + y14 * y9);
    m[(1, 0)] = h * (-y1 * y10 - y12 * y3 + y11 * y4 + y14 * y5 - y13 * y6 + y16 * y7
        - y15 * y8
        + y2 * y9);
    m[(2, 0)] = y10 * y5 + y12 * y7 - y11 * y8 - y6 * y9;
    m[(3, 0)] = h * (y10 * y13 + y12 * y15 - y11 * y16 - y2 * y5 + y1 * y6 - y4 * y7 + y3 * y8
        - y14 * y9);
    m[(4, 0)] = h * (-y1 * y10 - y12 * y3 + y11 * y4 - y14 * y5 + y13 * y6 - y16 * y7
        + y15 * y8
        + y2 * y9);
    m[(0, 1)] = h * (y11 * y13 - y12 * y14 + y10 * y16 + y3 * y5 - y4 * y6 - y1 * y7 + y2 * y8
        - y15 * y9);
    m[(1, 1)] = h * (y1 * y11 - y12 * y2 + y10 * y4 - y15 * y5 + y16 * y6 + y13 * y7
        - y14 * y8
        - y3 * y9);
    m[(2, 1)] = -y11 * y5 + y12 * y6 - y10 * y8 + y7 * y9;
    m[(3, 1)] = h * (-y11 * y13 + y12 * y14 - y10 * y16 + y3 * y5 - y4 * y6 - y1 * y7
        + y2 * y8
        + y15 * y9);
    m[(4, 1)] = h * (y1 * y11 - y12 * y2 + y10 * y4 + y15 * y5 - y16 * y6 - y13 * y7 + y14 * y8
        - y3 * y9);
    m[(0, 2)] = -y11 * y14 + y10 * y15 - y3 * y6 + y2 * y7;
    m[(1, 2)] = -y11 * y2 + y10 * y3 + y15 * y6 - y14 * y7;
    m[(2, 2)] = -1.0 + 2.0 * y11 * y6 - 2.0 * y10 * y7;
    m[(3, 2)] = y11 * y14 - y10 * y15 - y3 * y6 + y2 * y7;
    m[(4, 2)] = -y11 * y2 + y10 * y3 - y15 * y6 + y14 * y7;
    m[(0, 3)] = h * (-y10 * y13 + y12 * y15 - y11 * y16 - y2 * y5 + y1 * y6 + y4 * y7
        - y3 * y8
        + y14 * y9);
    m[(1, 3)] = h * (-y1 * y10 + y12 * y3 - y11 * y4 + y14 * y5 - y13 * y6 - y16 * y7
        + y15 * y8
        + y2 * y9);
    m[(2, 3)] = y10 * y5 - y12 * y7 + y11 * y8 - y6 * y9;
    m[(3, 3)] = h * (y10 * y13 - y12 * y15 + y11 * y16 - y2 * y5 + y1 * y6 + y4 * y7 - y3 * y8
        - y14 * y9);
    m[(4, 3)] = h * (-y1 * y10 + y12 * y3 - y11 * y4 - y14 * y5 + y13 * y6 + y16 * y7
        - y15 * y8
        + y2 * y9);
    m[(0, 4)] = h * (y11 * y13 + y12 * y14 - y10 * y16 + y3 * y5 + y4 * y6 - y1 * y7
        - y2 * y8
        - y15 * y9);
    m[(1, 4)] = h * (y1 * y11 + y12 * y2 - y10 * y4 - y15 * y5 - y16 * y6 + y13 * y7 + y14 * y8
        - y3 * y9);
    m[(2, 4)] = -y11 * y5 - y12 * y6 + y10 * y8 + y7 * y9;
    m[(3, 4)] = h * (-y11 * y13 - y12 * y14 + y10 * y16 + y3 * y5 + y4 * y6 - y1 * y7 - y2 * y8
        + y15 * y9);
    m[(4, 4)] = h * (y1 * y11 + y12 * y2 - y10 * y4 + y15 * y5 + y16 * y6 - y13 * y7
        - y14 * y8
        - y3 * y9);
    m
}

/// Spin+(3,2) -> SO+(3,2), the 25-entry table of the covering map.
pub fn phi_32(y: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    SpinElement::S32(y.clone()).validate(tol)?;
    Ok(phi_32_unchecked(y))
}

/// The six quadratic relations cutting out Spin+(3,2); all vanish exactly
/// on the group.
pub fn spin32_relations(ym: &Mat<f64>) -> [f64; 6] {
    let y = |k: usize| ym[((k - 1) / 4, (k - 1) % 4)];
    [
        y(1) * y(16) - y(4) * y(13) - y(5) * y(12) + y(8) * y(9) - 1.0,
        y(2) * y(16) - y(4) * y(14) - y(6) * y(12) + y(8) * y(10),
        y(3) * y(16) - y(4) * y(15) - y(7) * y(12) + y(8) * y(11),
        y(1) * y(15) - y(3) * y(13) - y(5) * y(11) + y(7) * y(9),
        y(2) * y(15) - y(3) * y(14) - y(6) * y(11) + y(7) * y(10) + 1.0,
        y(1) * y(14) - y(2) * y(13) - y(5) * y(10) + y(6) * y(9),
    ]
}

/// Spin+(4,1) -> SO+(4,1) through the generic conjugation oracle on the
/// cataloged basis (no closed entry table is kept for this signature).
pub fn phi_41(y: &QMat) -> Result<Mat<f64>, Error> {
    SpinElement::S41(y.clone()).validate(1e-7)?;
    let rep = cached_rep(Signature::new(4, 1))?;
    generic_phi(&rep.generators(), &cmat_to_qmat(&theta_h(y)), 1e-7)
}

// ------------------------------------------------- generic phi / psi

/// Matrix of the conjugation action `v -> Y v Y^{-1}` on one-vectors, with
/// coordinates extracted by (real-part) trace inner products against the
/// basis, each normalized by `Re Tr(V_i^* V_i)`.
///
/// For Y in the spin group `Y^{cc} = Y^{-1}`, so conjugation by the matrix
/// inverse realizes the covering map. Fails when the action leaves the span
/// of the basis by more than `tol` (wrong basis or Y outside the group).
pub fn generic_phi(basis: &[QMat], y: &QMat, tol: f64) -> Result<Mat<f64>, Error> {
    let n = basis.len();
    let y_inv = y.inverse()?;
    let norms: Vec<f64> = basis
        .iter()
        .map(|v| re_trace(&v.conj_transpose().mul(v)))
        .collect();
    let mut out = Mat::zeros(n, n);
    for j in 0..n {
        let w = y.mul(&basis[j]).mul(&y_inv);
        let mut recon = QMat::zeros(w.rows(), w.cols());
        for i in 0..n {
            let c = re_trace(&basis[i].conj_transpose().mul(&w)) / norms[i];
            out[(i, j)] = c;
            recon = recon.add(&basis[i].scale(&Quaternion::real(c)));
        }
        let residual = recon.max_diff(&w);
        if residual > tol * w.max_abs().max(1.0) {
            return Err(Error::Precondition(format!(
                "conjugation action leaves the one-vector span (residual {residual:.3e})"
            )));
        }
    }
    Ok(out)
}

/// Matrix of the commutator action `v -> L v - v L` on one-vectors.
pub fn generic_psi(basis: &[QMat], l: &QMat) -> Mat<f64> {
    let n = basis.len();
    let norms: Vec<f64> = basis
        .iter()
        .map(|v| re_trace(&v.conj_transpose().mul(v)))
        .collect();
    Mat::from_fn(n, n, |i, j| {
        let w = l.mul(&basis[j]).sub(&basis[j].mul(l));
        re_trace(&basis[i].conj_transpose().mul(&w)) / norms[i]
    })
}

// ------------------------------------------------- the (4,1) linearization

/// Parameters of an element of spin(4,1) in its 2x2 quaternionic form.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SpinAlgebraElement41 {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
    pub c: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl SpinAlgebraElement41 {
    /// The 2x2 quaternionic matrix this parameter vector encodes.
    pub fn to_quat_mat(&self) -> QMat {
        let q11 = Quaternion::new(self.a1, self.a2, self.alpha1, self.alpha2);
        let q12 = Quaternion::new(self.b, 0.0, self.beta1, self.beta2);
        let q21 = Quaternion::new(self.c, 0.0, self.gamma1, self.gamma2);
        let q22 = Quaternion::new(-self.a1, self.a2, -self.alpha1, -self.alpha2);
        Mat::from_rows(vec![vec![q11, q12], vec![q21, q22]])
    }

    pub fn from_quat_mat(m: &QMat) -> Self {
        SpinAlgebraElement41 {
            a1: m[(0, 0)].w,
            a2: m[(0, 0)].x,
            alpha1: m[(0, 0)].y,
            alpha2: m[(0, 0)].z,
            b: m[(0, 1)].w,
            beta1: m[(0, 1)].y,
            beta2: m[(0, 1)].z,
            c: m[(1, 0)].w,
            gamma1: m[(1, 0)].y,
            gamma2: m[(1, 0)].z,
        }
    }
}

/// The linearization spin(4,1) -> so(4,1): linear in all ten parameters.
///
/// The entry pattern was pinned against the commutator-action oracle on the
/// cataloged basis; relative to the corresponding reference display the
/// signs of the `a2`, `alpha2`, `beta2`, `gamma2` terms are flipped (a
/// conjugated quaternion convention), which the verifier documents.
pub fn psi_41(l: &SpinAlgebraElement41) -> Mat<f64> {
    let SpinAlgebraElement41 {
        a1,
        a2,
        b,
        c,
        alpha1,
        alpha2,
        beta1,
        beta2,
        gamma1,
        gamma2,
    } = *l;
    Mat::from_rows(vec![
        vec![0.0, -beta2 - gamma2, -b + c, beta1 + gamma1, -2.0 * a1],
        vec![beta2 + gamma2, 0.0, 2.0 * alpha2, -2.0 * a2, beta2 - gamma2],
        vec![b - c, -2.0 * alpha2, 0.0, 2.0 * alpha1, b + c],
        vec![-beta1 - gamma1, 2.0 * a2, -2.0 * alpha1, 0.0, -beta1 + gamma1],
        vec![-2.0 * a1, beta2 - gamma2, b + c, -beta1 + gamma1, 0.0],
    ])
}

/// Inverse of the linearization: exact linear read-off, rejecting inputs
/// outside so(4,1).
pub fn psi_41_inverse(l: &Mat<f64>) -> Result<SpinAlgebraElement41, Error> {
    let sig = Signature::new(4, 1);
    if l.rows() != 5 || l.cols() != 5 {
        return Err(Error::Dimension("psi_41_inverse expects 5x5".into()));
    }
    let g = metric(sig);
    let lie_residual = l.transpose().mul(&g).max_diff(&g.mul(l).neg());
    let scale = l.max_abs().max(1.0);
    if lie_residual > 1e-9 * scale {
        return Err(Error::Precondition(format!(
            "input is not in so(4,1) (residual {lie_residual:.3e})"
        )));
    }
    let out = SpinAlgebraElement41 {
        a1: -l[(0, 4)] / 2.0,
        a2: -l[(1, 3)] / 2.0,
        b: (l[(2, 4)] - l[(0, 2)]) / 2.0,
        c: (l[(0, 2)] + l[(2, 4)]) / 2.0,
        alpha1: l[(2, 3)] / 2.0,
        alpha2: l[(1, 2)] / 2.0,
        beta1: (l[(0, 3)] - l[(3, 4)]) / 2.0,
        gamma1: (l[(0, 3)] + l[(3, 4)]) / 2.0,
        beta2: (l[(1, 4)] - l[(0, 1)]) / 2.0,
        gamma2: -(l[(0, 1)] + l[(1, 4)]) / 2.0,
    };
    debug_assert!(psi_41(&out).max_diff(l) <= 1e-9 * scale);
    Ok(out)
}
