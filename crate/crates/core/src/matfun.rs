//! Closed-form matrix functions: the positive-definite square root in
//! SL(2, R) and the logarithm of SO(4) through its two commuting isoclinic
//! factors. Nothing here touches an eigendecomposition.

use crate::error::Error;
use crate::mat::Mat;

/// Square root of a symmetric positive definite 2x2 matrix with det = 1:
/// `W = (Z + I) / sqrt(tr(Z) + 2)`. W is positive definite, W^2 = Z,
/// det(W) = 1.
pub fn sqrt_posdef_sl2(z: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    if z.rows() != 2 || z.cols() != 2 {
        return Err(Error::Dimension("sqrt_posdef_sl2 expects 2x2".into()));
    }
    let det = z[(0, 0)] * z[(1, 1)] - z[(0, 1)] * z[(1, 0)];
    if (det - 1.0).abs() > tol {
        return Err(Error::Precondition(format!(
            "det(Z) = {det:.6e}, expected 1"
        )));
    }
    if !z.is_posdef_sym(tol) {
        return Err(Error::Precondition(
            "Z is not symmetric positive definite".into(),
        ));
    }
    let s = (z.trace() + 2.0).sqrt();
    Ok(z.add(&Mat::identity(2)).scale(&(1.0 / s)))
}

/// Matrix of left multiplication by the pure quaternion `p` on R^4 = H.
fn left_mul(p: [f64; 3]) -> Mat<f64> {
    let [p1, p2, p3] = p;
    Mat::from_rows(vec![
        vec![0.0, -p1, -p2, -p3],
        vec![p1, 0.0, -p3, p2],
        vec![p2, p3, 0.0, -p1],
        vec![p3, -p2, p1, 0.0],
    ])
}

/// Matrix of right multiplication by the conjugate of the pure quaternion `q`.
fn right_mul_conj(q: [f64; 3]) -> Mat<f64> {
    let [q1, q2, q3] = q;
    Mat::from_rows(vec![
        vec![0.0, q1, q2, q3],
        vec![-q1, 0.0, -q3, q2],
        vec![-q2, q3, 0.0, -q1],
        vec![-q3, -q2, q1, 0.0],
    ])
}

fn pure_log(w: [f64; 4]) -> [f64; 3] {
    let lam = w[0].clamp(-1.0, 1.0).acos();
    if lam < 1e-12 {
        return [0.0; 3];
    }
    let s = lam / lam.sin();
    [s * w[1], s * w[2], s * w[3]]
}

/// The two commuting antisymmetric pieces `(Y1, Y2)` with
/// `Exp(Y1 + Y2) = X` for `X` in SO(4).
///
/// `X` acts on R^4 = H as `x -> u x conj(v)` for unit quaternions u, v. The
/// pair is recovered from the rank-one associate matrix `T = u v^T` read off
/// by trace projections onto the sixteen products `L_{e_a} R_{conj(e_b)}`,
/// with the column of largest norm as the pivot and signs fixed so that
/// `Re(u) = cos(lambda)` with lambda in [0, pi).
pub fn so4_log_parts(x: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>), Error> {
    if x.rows() != 4 || x.cols() != 4 {
        return Err(Error::Dimension("so4_log expects 4x4".into()));
    }
    let id = Mat::identity(4);
    if x.transpose().mul(x).max_diff(&id) > tol {
        return Err(Error::Precondition("input is not orthogonal".into()));
    }
    if (x.det() - 1.0).abs() > 10.0 * tol {
        return Err(Error::Precondition("det != 1".into()));
    }
    if x.max_diff(&id) <= tol {
        return Ok((Mat::zeros(4, 4), Mat::zeros(4, 4)));
    }
    if x.max_diff(&id.neg()) <= tol {
        // -I = Exp(Z (+) Z) with Z the half-turn block
        let pi = std::f64::consts::PI;
        let z = Mat::from_rows(vec![vec![0.0, pi], vec![-pi, 0.0]]);
        let y = z.block_diag(&z);
        let zero = Mat::zeros(4, 4);
        return Ok((y, zero));
    }

    let mut basis_l = vec![Mat::identity(4)];
    let mut basis_r = vec![Mat::identity(4)];
    for a in 0..3 {
        let mut e = [0.0; 3];
        e[a] = 1.0;
        basis_l.push(left_mul(e));
        basis_r.push(right_mul_conj(e));
    }
    let mut t = Mat::<f64>::zeros(4, 4);
    for a in 0..4 {
        for b in 0..4 {
            let g = basis_l[a].mul(&basis_r[b]);
            t[(a, b)] = g.transpose().mul(x).trace() / 4.0;
        }
    }
    // rank-one factorization with largest-column pivot
    let mut best_col = 0;
    let mut best = -1.0;
    for j in 0..4 {
        let norm: f64 = (0..4).map(|i| t[(i, j)] * t[(i, j)]).sum();
        if norm > best {
            best = norm;
            best_col = j;
        }
    }
    let mut u = [0.0; 4];
    let nu = best.sqrt();
    for i in 0..4 {
        u[i] = t[(i, best_col)] / nu;
    }
    let mut v = [0.0; 4];
    for j in 0..4 {
        v[j] = (0..4).map(|i| u[i] * t[(i, j)]).sum();
    }
    let nv: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in v.iter_mut() {
        *c /= nv;
    }
    let corr: f64 = (0..4).map(|i| (0..4).map(|j| t[(i, j)] * u[i] * v[j]).sum::<f64>()).sum();
    if corr < 0.0 {
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
    if u[0] < 0.0 {
        for c in u.iter_mut() {
            *c = -*c;
        }
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
    let y1 = left_mul(pure_log(u));
    let y2 = right_mul_conj(pure_log(v));
    Ok((y1, y2))
}

/// Antisymmetric logarithm of an SO(4) matrix: `Exp(so4_log(X)) = X`.
pub fn so4_log(x: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    let (y1, y2) = so4_log_parts(x, tol)?;
    Ok(y1.add(&y2))
}
