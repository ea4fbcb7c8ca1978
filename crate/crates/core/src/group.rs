//! The groups SO+(p,q): metric, membership, constructive Givens
//! factorization, and the closed-form polar decomposition for signatures
//! (n,1).

use crate::error::Error;
use crate::mat::Mat;

/// Signature (p, q) of the quadratic form `I_p (+) (-I_q)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    // n = 0 is allowed: it is the root of the iterative basis constructions
    pub fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// The metric sign of basis direction `i` (1-based): +1 or -1.
    pub fn sign(&self, i: usize) -> f64 {
        if i <= self.p {
            1.0
        } else {
            -1.0
        }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// `I_{p,q} = diag(+1 x p, -1 x q)`.
pub fn metric(sig: Signature) -> Mat<f64> {
    Mat::from_fn(sig.n(), sig.n(), |i, j| {
        if i == j {
            sig.sign(i + 1)
        } else {
            0.0
        }
    })
}

/// Diagnostics behind a membership decision.
#[derive(Clone, Debug)]
pub struct Membership {
    pub metric_residual: f64,
    pub det_residual: f64,
    /// Determinant of the upper-left p x p block; positive on the identity
    /// component, and |det| >= 1 for any metric-preserving matrix.
    pub block_det: f64,
    pub ok: bool,
    pub reason: Option<String>,
}

/// Membership test for the identity component SO+(p,q): the metric relation,
/// det = 1, and positivity of the leading p x p block determinant.
pub fn so_plus_membership(x: &Mat<f64>, sig: Signature, tol: f64) -> Membership {
    let n = sig.n();
    let mut m = Membership {
        metric_residual: f64::INFINITY,
        det_residual: f64::INFINITY,
        block_det: f64::NAN,
        ok: false,
        reason: None,
    };
    if x.rows() != n || x.cols() != n {
        m.reason = Some(format!("expected {n}x{n}, got {}x{}", x.rows(), x.cols()));
        return m;
    }
    let g = metric(sig);
    m.metric_residual = x.transpose().mul(&g).mul(x).max_diff(&g);
    m.det_residual = (x.det() - 1.0).abs();
    let idx: Vec<usize> = (0..sig.p).collect();
    m.block_det = if sig.p > 0 {
        x.submatrix(&idx, &idx).det()
    } else {
        1.0
    };
    if m.metric_residual > tol {
        m.reason = Some(format!("metric residual {:.3e}", m.metric_residual));
    } else if m.det_residual > tol {
        m.reason = Some(format!("det residual {:.3e}", m.det_residual));
    } else if m.block_det <= 0.0 {
        m.reason = Some(format!(
            "not in the identity component (leading block det {:.3e})",
            m.block_det
        ));
    } else {
        m.ok = true;
    }
    m
}

pub fn is_in_so_plus(x: &Mat<f64>, sig: Signature, tol: f64) -> bool {
    so_plus_membership(x, sig, tol).ok
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GivensKind {
    Standard,
    Hyperbolic,
}

/// A plane factor: standard rotation `R_{ij}(theta)` or hyperbolic rotation
/// `H_{ij}(beta)`, stored by 1-based indices i < j and parameter.
///
/// Standard factors need both indices on the same side of the signature
/// split; hyperbolic factors need `i <= p < j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GivensFactor {
    pub kind: GivensKind,
    pub i: usize,
    pub j: usize,
    pub param: f64,
}

impl GivensFactor {
    pub fn standard(i: usize, j: usize, theta: f64) -> Self {
        GivensFactor {
            kind: GivensKind::Standard,
            i,
            j,
            param: normalize_angle(theta),
        }
    }

    pub fn hyperbolic(i: usize, j: usize, beta: f64) -> Self {
        GivensFactor {
            kind: GivensKind::Hyperbolic,
            i,
            j,
            param: beta,
        }
    }

    pub fn check_indices(&self, sig: Signature) -> Result<(), Error> {
        let (p, n) = (sig.p, sig.n());
        if !(1 <= self.i && self.i < self.j && self.j <= n) {
            return Err(Error::Precondition(format!(
                "factor indices ({},{}) out of range for n = {n}",
                self.i, self.j
            )));
        }
        match self.kind {
            GivensKind::Hyperbolic => {
                if !(self.i <= p && p < self.j) {
                    return Err(Error::Precondition(format!(
                        "hyperbolic factor needs i <= p < j, got ({},{}) with p = {p}",
                        self.i, self.j
                    )));
                }
            }
            GivensKind::Standard => {
                let same_side = self.j <= p || self.i > p;
                if !same_side {
                    return Err(Error::Precondition(format!(
                        "standard factor must stay on one side of the split, got ({},{}) with p = {p}",
                        self.i, self.j
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Normalize an angle to (-pi, pi].
pub fn normalize_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = theta % two_pi;
    if t > std::f64::consts::PI {
        t -= two_pi;
    } else if t <= -std::f64::consts::PI {
        t += two_pi;
    }
    t
}

/// Embed the factor as a principal 2x2 block of the identity:
/// `[[c, -s], [s, c]]` for standard, `[[a, b], [b, a]]` for hyperbolic.
pub fn givens_embed(f: &GivensFactor, sig: Signature) -> Result<Mat<f64>, Error> {
    f.check_indices(sig)?;
    let n = sig.n();
    let mut m = Mat::identity(n);
    let (i, j) = (f.i - 1, f.j - 1);
    match f.kind {
        GivensKind::Standard => {
            let (s, c) = f.param.sin_cos();
            m[(i, i)] = c;
            m[(i, j)] = -s;
            m[(j, i)] = s;
            m[(j, j)] = c;
        }
        GivensKind::Hyperbolic => {
            let (a, b) = (f.param.cosh(), f.param.sinh());
            m[(i, i)] = a;
            m[(i, j)] = b;
            m[(j, i)] = b;
            m[(j, j)] = a;
        }
    }
    Ok(m)
}

/// Logarithm of the embedded factor inside so(p,q):
/// `beta (e_i e_j^T + e_j e_i^T)` for hyperbolic,
/// `theta (e_j e_i^T - e_i e_j^T)` for standard.
pub fn givens_log(f: &GivensFactor, sig: Signature) -> Result<Mat<f64>, Error> {
    f.check_indices(sig)?;
    let n = sig.n();
    let mut m = Mat::zeros(n, n);
    let (i, j) = (f.i - 1, f.j - 1);
    match f.kind {
        GivensKind::Standard => {
            m[(i, j)] = -f.param;
            m[(j, i)] = f.param;
        }
        GivensKind::Hyperbolic => {
            m[(i, j)] = f.param;
            m[(j, i)] = f.param;
        }
    }
    Ok(m)
}

/// Verify `X^T I_{p,q} = -I_{p,q} X` (Lie algebra membership).
pub fn in_lie_algebra(x: &Mat<f64>, sig: Signature, tol: f64) -> bool {
    let g = metric(sig);
    x.transpose().mul(&g).max_diff(&g.mul(x).neg()) <= tol
}

// Relative gap below which a hyperbolic pivot is treated as degenerate
// (light-cone contact means the input was not in the group).
const HYPERBOLIC_PIVOT_GUARD: f64 = 1e-7;

/// Constructive Givens factorization of a member of SO+(p,q).
///
/// Columns are cleared left to right. Inside column c the block entries are
/// folded bottom-up onto the pivot row by standard rotations (separately in
/// the two metric blocks), one hyperbolic rotation merges across the split,
/// and the residual rotation block is cleared the same way. The merge slot
/// cycles through the negative block so only tabulated factor kinds appear.
/// The factor list multiplies back to X in order; its length is at most
/// C(n,2).
pub fn givens_decompose(x: &Mat<f64>, sig: Signature, tol: f64) -> Result<Vec<GivensFactor>, Error> {
    let membership = so_plus_membership(x, sig, tol.max(1e-9));
    if !membership.ok {
        return Err(Error::Membership {
            p: sig.p,
            q: sig.q,
            reason: membership.reason.unwrap_or_default(),
        });
    }
    let (p, q, n) = (sig.p, sig.q, sig.n());
    let mut work = x.clone();
    let mut factors: Vec<GivensFactor> = Vec::new();

    // premultiply `work` by the embedded factor and record its inverse
    let apply = |work: &mut Mat<f64>, f: GivensFactor, factors: &mut Vec<GivensFactor>| {
        let g = givens_embed(&f, sig).expect("eliminator indices are valid");
        *work = g.mul(work);
        let inv = GivensFactor {
            kind: f.kind,
            i: f.i,
            j: f.j,
            param: -f.param,
        };
        factors.push(inv);
    };

    for c in 1..=p {
        // positive block: fold rows c+1..=p onto row c, bottom-up
        for r in ((c + 1)..=p).rev() {
            let (a, b) = (work[(c - 1, c - 1)], work[(r - 1, c - 1)]);
            // a negative pivot with nothing to clear still needs a half-turn
            if b.abs() <= 1e-14 && a >= 0.0 {
                continue;
            }
            let theta = f64::atan2(-b, a);
            apply(&mut work, GivensFactor::standard(c, r, theta), &mut factors);
        }
        if q > 0 {
            // negative block: fold everything onto the merge slot
            let m = p + 1 + ((c - 1) % q);
            for r in ((p + 1)..=n).rev() {
                if r == m {
                    continue;
                }
                let (a, b) = (work[(m - 1, c - 1)], work[(r - 1, c - 1)]);
                if b.abs() <= 1e-14 && a >= 0.0 {
                    continue;
                }
                let (lo, hi) = (m.min(r), m.max(r));
                // orientation: zero the r component into the m slot
                let theta = if m < r {
                    f64::atan2(-b, a)
                } else {
                    f64::atan2(b, a)
                };
                apply(&mut work, GivensFactor::standard(lo, hi, theta), &mut factors);
            }
            // hyperbolic merge across the split
            let (a, b) = (work[(c - 1, c - 1)], work[(m - 1, c - 1)]);
            if b.abs() > 1e-14 {
                if a.abs() - b.abs() <= HYPERBOLIC_PIVOT_GUARD * a.abs().max(1.0) {
                    return Err(Error::Membership {
                        p,
                        q,
                        reason: format!(
                            "hyperbolic pivot degenerate at column {c}: |{a:.3e}| vs |{b:.3e}|"
                        ),
                    });
                }
                let beta = (-b / a).atanh();
                apply(&mut work, GivensFactor::hyperbolic(c, m, beta), &mut factors);
            }
        }
        let pivot = work[(c - 1, c - 1)];
        if (pivot - 1.0).abs() > 1e-6 {
            return Err(Error::Membership {
                p,
                q,
                reason: format!("column {c} reduced to pivot {pivot:.6}, expected +1"),
            });
        }
    }
    // residual block is special orthogonal in the negative directions
    for c in (p + 1)..n {
        for r in ((c + 1)..=n).rev() {
            let (a, b) = (work[(c - 1, c - 1)], work[(r - 1, c - 1)]);
            if b.abs() <= 1e-14 && a >= 0.0 {
                continue;
            }
            let theta = f64::atan2(-b, a);
            apply(&mut work, GivensFactor::standard(c, r, theta), &mut factors);
        }
        let pivot = work[(c - 1, c - 1)];
        if (pivot - 1.0).abs() > 1e-6 {
            return Err(Error::Membership {
                p,
                q,
                reason: format!("column {c} reduced to pivot {pivot:.6}, expected +1"),
            });
        }
    }
    if work.max_diff(&Mat::identity(n)) > 1e-6 {
        return Err(Error::Membership {
            p,
            q,
            reason: "reduction did not reach the identity".into(),
        });
    }

    // reverse: X = G_1^{-1} ... G_k^{-1}; the recorded inverses are already
    // in that order
    debug_assert!(factors.len() <= n * (n - 1) / 2 + n); // generous bound before pruning
    let factors: Vec<GivensFactor> = factors
        .into_iter()
        .filter(|f| f.param.abs() > 0.0)
        .collect();
    // multiply-back sanity at the requested tolerance
    let mut prod = Mat::identity(n);
    for f in &factors {
        prod = prod.mul(&givens_embed(f, sig)?);
    }
    if prod.max_diff(x) > tol.max(1e-9) {
        return Err(Error::Membership {
            p,
            q,
            reason: format!(
                "reconstruction residual {:.3e} exceeds tolerance",
                prod.max_diff(x)
            ),
        });
    }
    Ok(factors)
}

/// Multiply embedded factors back together, in order.
pub fn givens_product(factors: &[GivensFactor], sig: Signature) -> Result<Mat<f64>, Error> {
    let mut prod = Mat::identity(sig.n());
    for f in factors {
        prod = prod.mul(&givens_embed(f, sig)?);
    }
    Ok(prod)
}

/// Output of the (n,1) polar decomposition.
#[derive(Clone, Debug)]
pub struct PolarN1 {
    /// Special orthogonal factor, of the form `Z (+) 1`.
    pub v: Mat<f64>,
    /// Symmetric positive definite factor in SO+(n,1).
    pub p: Mat<f64>,
    /// Symmetric element of so(n,1) with `Exp(Q) = P`.
    pub q: Mat<f64>,
}

/// Polar decomposition `X = V P` in SO+(n,1) for n in {2, 3, 4}, read off
/// the last row of X.
///
/// With `cosh(sigma) = X[n+1][n+1]` and `u` the unit direction of the last
/// row's spatial part, `P = I + (cosh(sigma)-1) u u^T` bordered by
/// `sinh(sigma) u`, `Q = sigma (u e^T + e u^T)` and `V = X P^{-1}` with the
/// closed-form inverse `P^{-1} = Exp(-Q)`.
pub fn polar_decompose_n1(x: &Mat<f64>, sig: Signature, tol: f64) -> Result<PolarN1, Error> {
    if sig.q != 1 || !(2..=4).contains(&sig.p) {
        return Err(Error::Unsupported(format!(
            "polar decomposition implemented for (n,1) with n in 2..=4, got {sig}"
        )));
    }
    let membership = so_plus_membership(x, sig, tol.max(1e-9));
    if !membership.ok {
        return Err(Error::Membership {
            p: sig.p,
            q: sig.q,
            reason: membership.reason.unwrap_or_default(),
        });
    }
    let n = sig.p;
    let ch = x[(n, n)];
    let sigma = ch.max(1.0).acosh();
    if sigma < 1e-12 {
        // X[n+1][n+1] = 1 forces X = Z (+) 1 already
        return Ok(PolarN1 {
            v: x.clone(),
            p: Mat::identity(n + 1),
            q: Mat::zeros(n + 1, n + 1),
        });
    }
    let mut u = vec![0.0; n];
    let mut norm = 0.0;
    for k in 0..n {
        u[k] = x[(n, k)];
        norm += u[k] * u[k];
    }
    let norm = norm.sqrt();
    for c in u.iter_mut() {
        *c /= norm;
    }
    let sh = sigma.sinh();
    let build = |sh_sign: f64| {
        let mut m = Mat::identity(n + 1);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] += (ch - 1.0) * u[a] * u[b];
            }
            m[(a, n)] = sh_sign * sh * u[a];
            m[(n, a)] = sh_sign * sh * u[a];
        }
        m[(n, n)] = ch;
        m
    };
    let p = build(1.0);
    let p_inv = build(-1.0);
    let v = x.mul(&p_inv);
    let mut q = Mat::zeros(n + 1, n + 1);
    for a in 0..n {
        q[(a, n)] = sigma * u[a];
        q[(n, a)] = sigma * u[a];
    }
    Ok(PolarN1 { v, p, q })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_examples() {
        let m21 = metric(Signature::new(2, 1));
        assert_eq!(m21[(0, 0)], 1.0);
        assert_eq!(m21[(1, 1)], 1.0);
        assert_eq!(m21[(2, 2)], -1.0);
        let m03 = metric(Signature::new(0, 3));
        assert!(m03.max_diff(&Mat::identity(3).neg()) < 1e-15);
        let m41 = metric(Signature::new(4, 1));
        assert_eq!(m41[(3, 3)], 1.0);
        assert_eq!(m41[(4, 4)], -1.0);
    }

    #[test]
    fn membership_examples() {
        let sig = Signature::new(2, 2);
        assert!(is_in_so_plus(&Mat::identity(4), sig, 1e-9));
        // in SO(2,2) but not the identity component
        let flip = Mat::from_fn(4, 4, |i, j| {
            if i != j {
                0.0
            } else if i == 1 || i == 2 {
                -1.0
            } else {
                1.0
            }
        });
        let m = so_plus_membership(&flip, sig, 1e-9);
        assert!(!m.ok);
        assert!(m.block_det < 0.0);
        // hyperbolic factors land in the identity component
        let h = givens_embed(&GivensFactor::hyperbolic(1, 3, 0.7), sig).unwrap();
        assert!(is_in_so_plus(&h, sig, 1e-9));
    }

    #[test]
    fn embed_examples() {
        let sig = Signature::new(2, 1);
        let h = givens_embed(&GivensFactor::hyperbolic(1, 3, 0.9), sig).unwrap();
        assert!((h[(0, 0)] - 0.9f64.cosh()).abs() < 1e-15);
        assert!((h[(0, 2)] - 0.9f64.sinh()).abs() < 1e-15);
        assert!((h[(1, 1)] - 1.0).abs() < 1e-15);
        let r0 = givens_embed(&GivensFactor::standard(1, 2, 0.0), sig).unwrap();
        assert!(r0.max_diff(&Mat::identity(3)) < 1e-15);
    }

    #[test]
    fn index_constraints() {
        let sig = Signature::new(2, 2);
        assert!(GivensFactor::standard(1, 3, 0.5).check_indices(sig).is_err());
        assert!(GivensFactor::hyperbolic(3, 4, 0.5).check_indices(sig).is_err());
        assert!(GivensFactor::hyperbolic(2, 3, 0.5).check_indices(sig).is_ok());
        assert!(GivensFactor::standard(3, 4, 0.5).check_indices(sig).is_ok());
    }

    #[test]
    fn log_matches_embed() {
        let sig = Signature::new(2, 1);
        let f = GivensFactor::hyperbolic(1, 3, 0.8);
        let l = givens_log(&f, sig).unwrap();
        assert_eq!(l[(0, 2)], 0.8);
        assert_eq!(l[(2, 0)], 0.8);
        assert!(in_lie_algebra(&l, sig, 1e-12));
        assert!(l.expm().max_diff(&givens_embed(&f, sig).unwrap()) < 1e-12);

        let zero = GivensFactor::standard(1, 2, 0.0);
        assert!(givens_log(&zero, sig).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn decompose_identity_is_empty() {
        let sig = Signature::new(2, 2);
        let f = givens_decompose(&Mat::identity(4), sig, 1e-9).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn decompose_single_factor() {
        let sig = Signature::new(2, 2);
        let x = givens_embed(&GivensFactor::hyperbolic(1, 3, 0.7), sig).unwrap();
        let fs = givens_decompose(&x, sig, 1e-9).unwrap();
        let back = givens_product(&fs, sig).unwrap();
        assert!(back.max_diff(&x) < 1e-10);
    }

    #[test]
    fn decompose_rejects_wrong_component() {
        let sig = Signature::new(2, 2);
        let flip = Mat::from_fn(4, 4, |i, j| {
            if i != j {
                0.0
            } else if i == 1 || i == 2 {
                -1.0
            } else {
                1.0
            }
        });
        assert!(givens_decompose(&flip, sig, 1e-9).is_err());
    }

    #[test]
    fn polar_on_identity_and_pure_boost() {
        let sig = Signature::new(2, 1);
        let out = polar_decompose_n1(&Mat::identity(3), sig, 1e-9).unwrap();
        assert!(out.v.max_diff(&Mat::identity(3)) < 1e-15);
        assert!(out.p.max_diff(&Mat::identity(3)) < 1e-15);
        assert!(out.q.max_abs() < 1e-15);

        let x = givens_embed(&GivensFactor::hyperbolic(1, 3, 0.8), sig).unwrap();
        let out = polar_decompose_n1(&x, sig, 1e-9).unwrap();
        assert!(out.v.max_diff(&Mat::identity(3)) < 1e-12);
        assert!(out.p.max_diff(&x) < 1e-12);
        assert!((out.q[(0, 2)] - 0.8).abs() < 1e-12);
        assert!(out.q.expm().max_diff(&out.p) < 1e-12);
    }

    #[test]
    fn polar_of_rotation_times_boost() {
        let sig = Signature::new(2, 1);
        let r = givens_embed(&GivensFactor::standard(1, 2, 1.1), sig).unwrap();
        let h = givens_embed(&GivensFactor::hyperbolic(1, 3, 0.6), sig).unwrap();
        let x = r.mul(&h);
        let out = polar_decompose_n1(&x, sig, 1e-9).unwrap();
        assert!(out.v.mul(&out.p).max_diff(&x) < 1e-10);
        assert!(out.v.transpose().mul(&out.v).max_diff(&Mat::identity(3)) < 1e-10);
        assert!(out.p.is_posdef_sym(1e-10));
        assert!(out.q.is_symmetric(1e-12));
        assert!(in_lie_algebra(&out.q, sig, 1e-12));
        assert!(is_in_so_plus(&out.v, sig, 1e-9));
        assert!(is_in_so_plus(&out.p, sig, 1e-9));
    }
}
