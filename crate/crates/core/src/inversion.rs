//! Inversion of the covering maps.
//!
//! Strategies:
//! - `invert_posdef_21` / `invert_21`: inspection plus polar decomposition
//!   for SO+(2,1)
//! - `invert_givens_*` / `invert_via_givens`: preimages of Givens factors in
//!   the compact spin representation, multiplied along a factorization
//! - `invert_41_polar`: polar decomposition, inverse linearization, and
//!   closed-form exponentials for SO+(4,1)
//! - `agnostic_invert`: the same factor preimages assembled inside the
//!   abstract Clifford algebra (works for any signature with n <= 10)
//! - `shirokov_invert`: the minor-weighted blade sum, used as an independent
//!   oracle under its genericity condition

use crate::blades::{blade_mul, Multivector};
use crate::covering::{
    cached_rep, generic_phi, phi_21, psi_41_inverse, SpinElement,
};
use crate::error::Error;
use crate::group::{
    givens_decompose, givens_embed, polar_decompose_n1, so_plus_membership, GivensFactor,
    GivensKind, Signature,
};
use crate::mat::{re_trace, Mat, QMat};
use crate::matfun::sqrt_posdef_sl2;
use crate::quat::Quaternion;
use crate::scalar::FieldScalar;

/// Entries within this distance of an angle-table boundary snap onto it.
const BOUNDARY_SNAP: f64 = 1e-12;

/// Default absolute threshold below which `MM^rev` counts as non-generic.
const GENERICITY_FLOOR: f64 = 1e-9;

/// The two preimages `{+Y, -Y}` of a target, in the compact representation.
#[derive(Clone, Debug)]
pub struct PreimagePair {
    pub plus: SpinElement,
    pub minus: SpinElement,
    /// `max |Phi(plus) - X|` under the signature's forward map.
    pub residual: f64,
}

impl PreimagePair {
    pub fn new(el: SpinElement, target: &Mat<f64>) -> Result<Self, Error> {
        let plus = el.canonical_sign(1e-9);
        let minus = plus.neg();
        let residual = plus.phi()?.max_diff(target);
        Ok(PreimagePair {
            plus,
            minus,
            residual,
        })
    }
}

// ------------------------------------------------------------ (2,1) routes

/// Positive definite preimage of a positive definite target in SO+(2,1),
/// by inspection of the covering-map entries.
pub fn invert_posdef_21(x: &Mat<f64>, tol: f64) -> Result<Mat<f64>, Error> {
    let sig = Signature::new(2, 1);
    let membership = so_plus_membership(x, sig, tol.max(1e-9));
    if !membership.ok {
        return Err(Error::Membership {
            p: 2,
            q: 1,
            reason: membership.reason.unwrap_or_default(),
        });
    }
    if !x.is_posdef_sym(tol.max(1e-9)) {
        return Err(Error::Precondition(
            "target is not symmetric positive definite".into(),
        ));
    }
    let y = if (x[(0, 0)] - 1.0).abs() > tol.max(1e-9) {
        let y2 = ((x[(0, 0)] - 1.0) / 2.0).sqrt();
        let y1 = -(x[(0, 1)] + x[(0, 2)]) / (2.0 * y2);
        let y4 = (x[(0, 1)] - x[(0, 2)]) / (2.0 * y2);
        let cand = Mat::from_rows(vec![vec![y1, y2], vec![y2, y4]]);
        // the two sign choices are negatives of each other; the positive
        // definite one has positive trace
        if cand.trace() > 0.0 {
            cand
        } else {
            cand.neg()
        }
    } else {
        let y1 = (x[(1, 1)] + x[(1, 2)]).sqrt();
        let y4 = (x[(1, 1)] - x[(1, 2)]).sqrt();
        Mat::from_rows(vec![vec![y1, 0.0], vec![0.0, y4]])
    };
    debug_assert!(y.is_posdef_sym(1e-12));
    Ok(y)
}

/// Everything Algorithm-style inversion of SO+(2,1) produces in one pass.
#[derive(Clone, Debug)]
pub struct Invert21 {
    pub pair: PreimagePair,
    /// Special orthogonal polar factor `diag(R(theta), 1)`.
    pub v: Mat<f64>,
    /// Positive definite polar factor.
    pub p: Mat<f64>,
    pub warnings: Vec<String>,
}

/// Invert SO+(2,1) through the polar decomposition: the positive part is
/// inverted by inspection and a closed-form square root, the rotation part
/// by its half angle; the preimage is the product `S W` of the two spin
/// factors (mirroring `X = V P`).
pub fn invert_21(x: &Mat<f64>, tol: f64) -> Result<Invert21, Error> {
    let mut warnings = Vec::new();
    let xtx = x.transpose().mul(x);
    let z = invert_posdef_21(&xtx, tol)?;
    let w = sqrt_posdef_sl2(&z, 1e-7)?;
    let p = phi_21(&w, 1e-7)?;
    // inverse of W inside SL(2,R) by the adjugate swap, pushed through Phi
    let w_inv = Mat::from_rows(vec![
        vec![w[(1, 1)], -w[(0, 1)]],
        vec![-w[(1, 0)], w[(0, 0)]],
    ]);
    let p_inv = phi_21(&w_inv, 1e-7)?;
    let v = x.mul(&p_inv);
    // V = diag(R(theta), 1); theta normalized into [0, 2pi) for the
    // half-angle formulas
    let mut theta = f64::atan2(v[(1, 0)], v[(0, 0)]);
    if theta < 0.0 {
        theta += 2.0 * std::f64::consts::PI;
    }
    if theta < BOUNDARY_SNAP || (2.0 * std::f64::consts::PI - theta) < BOUNDARY_SNAP {
        theta = 0.0;
        warnings.push("rotation angle at the 0/2pi table boundary".into());
    } else if (theta - std::f64::consts::PI).abs() < BOUNDARY_SNAP {
        theta = std::f64::consts::PI;
        warnings.push("rotation angle at the pi table boundary".into());
    }
    let (hs, hc) = (theta / 2.0).sin_cos();
    let s_mat = Mat::from_rows(vec![vec![hc, -hs], vec![hs, hc]]);
    let y = s_mat.mul(&w);
    let pair = PreimagePair::new(SpinElement::S21(y), x)?;
    Ok(Invert21 {
        pair,
        v,
        p,
        warnings,
    })
}

// ----------------------------------------------- factor preimage engine

/// Preimage of a Givens factor as an element of the abstract algebra:
/// half-angle scalar plus bivector, with the sign convention pinned by the
/// conjugation oracle (negative blade coefficient for hyperbolic factors
/// and positive-block rotations, positive for negative-block rotations).
pub fn blade_factor_preimage(f: &GivensFactor, sig: Signature) -> Result<Multivector<f64>, Error> {
    f.check_indices(sig)?;
    let half = f.param / 2.0;
    let (scalar, coeff) = match f.kind {
        GivensKind::Standard => {
            let sign = if f.j <= sig.p { -1.0 } else { 1.0 };
            (half.cos(), sign * half.sin())
        }
        GivensKind::Hyperbolic => (half.cosh(), -half.sinh()),
    };
    Ok(Multivector::scalar(sig, scalar)
        .add(&Multivector::blade(sig, &[f.i, f.j], coeff)))
}

/// Preimage of a Givens factor in the compact spin representation of a
/// cataloged signature.
pub fn spin_factor_preimage(f: &GivensFactor, sig: Signature) -> Result<SpinElement, Error> {
    let mv = blade_factor_preimage(f, sig)?;
    let rep = cached_rep(sig)?;
    let m = mv.matrix_rep(rep);
    SpinElement::from_rep(sig, &m, 1e-9)
}

fn snap_boundary(f: &GivensFactor, warnings: &mut Vec<String>) -> GivensFactor {
    let mut out = *f;
    if f.kind == GivensKind::Standard {
        let pi = std::f64::consts::PI;
        for target in [0.0, pi, -pi] {
            if f.param != target && (f.param - target).abs() < BOUNDARY_SNAP {
                out.param = target;
                warnings.push(format!(
                    "standard factor ({},{}) snapped to the {target:.0}-boundary case",
                    f.i, f.j
                ));
            }
        }
    }
    out
}

type PlaneTable = (&'static [(usize, usize)], &'static [(usize, usize)]);

fn tabulated_planes(sig: Signature) -> Option<PlaneTable> {
    // (standard planes, hyperbolic planes) carried by the preimage tables
    match (sig.p, sig.q) {
        (2, 2) => Some((&[(1, 2), (3, 4)], &[(1, 3), (2, 4)])),
        (3, 2) => Some((
            &[(1, 2), (1, 3), (2, 3), (4, 5)],
            &[(1, 4), (2, 5), (3, 4)],
        )),
        (4, 1) => Some((
            &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            &[(1, 5), (2, 5), (3, 5), (4, 5)],
        )),
        _ => None,
    }
}

fn invert_givens_tabulated(f: &GivensFactor, sig: Signature) -> Result<PreimagePair, Error> {
    let (std_planes, hyp_planes) =
        tabulated_planes(sig).ok_or(Error::Unsupported(format!("no factor table for {sig}")))?;
    let planes = match f.kind {
        GivensKind::Standard => std_planes,
        GivensKind::Hyperbolic => hyp_planes,
    };
    if !planes.contains(&(f.i, f.j)) {
        return Err(Error::FactorNotTabulated(format!(
            "{:?} ({},{}) in {sig}",
            f.kind, f.i, f.j
        )));
    }
    let mut warnings = Vec::new();
    let f = snap_boundary(f, &mut warnings);
    let el = spin_factor_preimage(&f, sig)?;
    PreimagePair::new(el, &givens_embed(&f, sig)?)
}

/// Tabulated preimage of a Givens factor of SO+(2,2).
pub fn invert_givens_22(f: &GivensFactor) -> Result<PreimagePair, Error> {
    invert_givens_tabulated(f, Signature::new(2, 2))
}

/// Tabulated preimage of a Givens factor of SO+(3,2).
pub fn invert_givens_32(f: &GivensFactor) -> Result<PreimagePair, Error> {
    invert_givens_tabulated(f, Signature::new(3, 2))
}

/// Tabulated preimage of a Givens factor of SO+(4,1).
pub fn invert_givens_41(f: &GivensFactor) -> Result<PreimagePair, Error> {
    invert_givens_tabulated(f, Signature::new(4, 1))
}

#[derive(Clone, Debug)]
pub struct GivensInversion {
    pub pair: PreimagePair,
    pub factors: Vec<GivensFactor>,
    pub warnings: Vec<String>,
}

/// Invert by factorizing the target into Givens factors and multiplying
/// the tabulated preimages in order.
pub fn invert_via_givens(x: &Mat<f64>, sig: Signature, tol: f64) -> Result<GivensInversion, Error> {
    if tabulated_planes(sig).is_none() {
        return Err(Error::Unsupported(format!(
            "givens-table inversion covers (2,2), (3,2), (4,1); got {sig}"
        )));
    }
    let factors = givens_decompose(x, sig, tol)?;
    let mut warnings = Vec::new();
    let mut acc = SpinElement::identity(sig)?;
    for f in &factors {
        let f = snap_boundary(f, &mut warnings);
        if let Some((id, status, _)) =
            crate::verify::row_documentation(sig, f.kind, (f.i, f.j))
        {
            if status != crate::verify::RowStatus::Verified {
                let w = format!(
                    "reference row {id} is documented as {status:?}; oracle-corrected preimage used"
                );
                if !warnings.contains(&w) {
                    warnings.push(w);
                }
            }
        }
        let el = spin_factor_preimage(&f, sig)?;
        acc = acc.mul(&el)?;
    }
    let pair = PreimagePair::new(acc, x)?;
    Ok(GivensInversion {
        pair,
        factors,
        warnings,
    })
}

// ------------------------------------------------------------ (4,1) polar

#[derive(Clone, Debug)]
pub struct Invert41Polar {
    pub pair: PreimagePair,
    pub v: Mat<f64>,
    pub p: Mat<f64>,
    pub warnings: Vec<String>,
}

/// Exponential of a spin(4,1) element annihilated by `K^3 = -kappa^2 K`
/// (the rotation pieces): the three-term trig polynomial in K.
fn exp_cubic_rotation(k: &QMat) -> Result<QMat, Error> {
    let id = QMat::identity(2);
    let norm = k.max_abs();
    if norm < 1e-14 {
        return Ok(id);
    }
    let k2 = k.mul(k);
    let k3 = k2.mul(k);
    let inner = re_trace(&k.conj_transpose().mul(k));
    let kappa_sq = -re_trace(&k.conj_transpose().mul(&k3)) / inner;
    if kappa_sq <= 0.0 {
        return Err(Error::Precondition(
            "rotation piece lacks the cubic annihilating polynomial".into(),
        ));
    }
    let residual = k3.add(&k.scale(&Quaternion::real(kappa_sq))).max_abs();
    if residual > 1e-8 * norm.max(1.0) * kappa_sq.max(1.0) {
        return Err(Error::Precondition(format!(
            "cubic annihilation residual {residual:.3e}"
        )));
    }
    let kappa = kappa_sq.sqrt();
    let (c1, c2) = if kappa < 1e-4 {
        // removable singularity: series for sin(k)/k and (1-cos k)/k^2
        (1.0 - kappa_sq / 6.0, 0.5 - kappa_sq / 24.0)
    } else {
        (kappa.sin() / kappa, (1.0 - kappa.cos()) / kappa_sq)
    };
    Ok(id
        .add(&k.scale(&Quaternion::real(c1)))
        .add(&k2.scale(&Quaternion::real(c2))))
}

/// Exponential of a symmetric-type spin(4,1) element with `L^2 = lambda^2 I`.
fn exp_quadratic_boost(l: &QMat) -> QMat {
    let id = QMat::identity(2);
    let l2 = l.mul(l);
    let lambda_sq = re_trace(&l2) / 2.0;
    if lambda_sq.abs() < 1e-20 {
        return id.add(l);
    }
    let lam = lambda_sq.max(0.0).sqrt();
    if lam < 1e-10 {
        return id.add(l);
    }
    id.scale(&Quaternion::real(lam.cosh()))
        .add(&l.scale(&Quaternion::real(lam.sinh() / lam)))
}

/// Invert SO+(4,1) through its polar decomposition: the positive factor
/// pulls back through the inverse linearization to a Hermitian element with
/// a quadratic annihilating polynomial; the rotation factor splits into two
/// commuting pieces with cubic annihilating polynomials.
pub fn invert_41_polar(x: &Mat<f64>, tol: f64) -> Result<Invert41Polar, Error> {
    let sig = Signature::new(4, 1);
    let polar = polar_decompose_n1(x, sig, tol)?;
    let warnings = Vec::new();

    // positive part: Lambda = Psi^{-1}(Q), lambda^2 = a1^2 + |q|^2
    let lam = psi_41_inverse(&polar.q)?.to_quat_mat();
    let pre_p = exp_quadratic_boost(&lam);

    // rotation part: commuting left/right isoclinic logarithms
    let w = Mat::from_fn(4, 4, |i, j| polar.v[(i, j)]);
    let (y1, y2) = crate::matfun::so4_log_parts(&w, 1e-8)?;
    let lift = |y: &Mat<f64>| -> Result<QMat, Error> {
        let mut padded = Mat::zeros(5, 5);
        for i in 0..4 {
            for j in 0..4 {
                padded[(i, j)] = y[(i, j)];
            }
        }
        Ok(psi_41_inverse(&padded)?.to_quat_mat())
    };
    let k1 = lift(&y1)?;
    let k2 = lift(&y2)?;
    let pre_v = exp_cubic_rotation(&k1)?.mul(&exp_cubic_rotation(&k2)?);

    let pair = PreimagePair::new(SpinElement::S41(pre_v.mul(&pre_p)), x)?;
    Ok(Invert41Polar {
        pair,
        v: polar.v,
        p: polar.p,
        warnings,
    })
}

// --------------------------------------------------------------- agnostic

/// Signature-agnostic inversion inside the abstract Clifford algebra:
/// factorize, map every factor to its half-angle rotor, and multiply.
/// The result is even, satisfies `x cc(x) = 1`, and its conjugation action
/// on abstract one-vectors reproduces the target.
pub fn agnostic_invert(x: &Mat<f64>, sig: Signature, tol: f64) -> Result<Multivector<f64>, Error> {
    if sig.n() > 10 {
        return Err(Error::Unsupported(format!(
            "agnostic inversion capped at n <= 10, got {sig}"
        )));
    }
    let factors = givens_decompose(x, sig, tol)?;
    let mut acc = Multivector::one(sig);
    for f in &factors {
        acc = acc.geometric_product(&blade_factor_preimage(f, sig)?)?;
    }
    let acc = canonical_blade_sign(&acc);
    // structural checks: even, unit under Clifford conjugation
    if !acc.is_even() {
        return Err(Error::Precondition("preimage is not even".into()));
    }
    let unit = acc.geometric_product(&acc.clifford_conjugate())?;
    if unit.max_diff(&Multivector::one(sig)) > 1e-8 {
        return Err(Error::Precondition(format!(
            "x cc(x) deviates from 1 by {:.3e}",
            unit.max_diff(&Multivector::one(sig))
        )));
    }
    Ok(acc)
}

/// Canonical representative of a blade-level preimage pair: first
/// coefficient above threshold (blade-index order) made positive.
pub fn canonical_blade_sign(mv: &Multivector<f64>) -> Multivector<f64> {
    for v in mv.coeffs() {
        if v.abs() > 1e-9 {
            return if *v < 0.0 { mv.neg() } else { mv.clone() };
        }
    }
    mv.clone()
}

// --------------------------------------------------------------- shirokov

/// The minor-weighted blade sum `M = sum det(X_{a,b}) e_a (e_b)^{-1}` and
/// the product `M M^rev`, over equal-cardinality row/column subsets
/// including the empty pair. Exact over rational scalars.
pub fn shirokov_m<T: FieldScalar>(
    x: &Mat<T>,
    sig: Signature,
) -> Result<(Multivector<T>, Multivector<T>), Error> {
    let n = sig.n();
    if x.rows() != n || x.cols() != n {
        return Err(Error::Dimension(format!(
            "expected {n}x{n} for signature {sig}"
        )));
    }
    if n > 8 {
        return Err(Error::Unsupported(
            "minor enumeration capped at n <= 8".into(),
        ));
    }
    let mut m = Multivector::<T>::zero(sig);
    let count = 1u32 << n;
    for a_mask in 0..count {
        let k = a_mask.count_ones();
        let rows: Vec<usize> = (0..n).filter(|i| (a_mask >> i) & 1 == 1).collect();
        for b_mask in 0..count {
            if b_mask.count_ones() != k {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|i| (b_mask >> i) & 1 == 1).collect();
            let d = if k == 0 {
                T::one()
            } else {
                x.submatrix(&rows, &cols).det()
            };
            if d.is_zero() {
                continue;
            }
            // e_b^{-1} = s e_b with s the blade square sign
            let (sq_sign, _) = blade_mul(b_mask, b_mask, sig);
            let (mul_sign, mask) = blade_mul(a_mask, b_mask, sig);
            let sign = sq_sign * mul_sign;
            let cur = m.coeff(mask).clone();
            *m.coeff_mut(mask) = if sign > 0 { cur + d } else { cur - d };
        }
    }
    let mm_rev = m.geometric_product(&m.reversion())?;
    Ok((m, mm_rev))
}

#[derive(Clone, Debug)]
pub struct ShirokovResult {
    pub m: Multivector<f64>,
    /// Scalar part of `M M^rev`.
    pub mm_rev_scalar: f64,
    /// Largest non-scalar coefficient of `M M^rev`.
    pub purity_residual: f64,
    /// Normalized preimage, present when the genericity condition holds.
    pub y: Option<Multivector<f64>>,
    pub generic_ok: bool,
}

/// Minor-formula inversion. A genericity failure (`M M^rev ~ 0`) is
/// reported in the result, not fatal; callers fall back to the agnostic
/// route.
pub fn shirokov_invert(x: &Mat<f64>, sig: Signature, tol: f64) -> Result<ShirokovResult, Error> {
    let membership = so_plus_membership(x, sig, tol.max(1e-9));
    if !membership.ok {
        return Err(Error::Membership {
            p: sig.p,
            q: sig.q,
            reason: membership.reason.unwrap_or_default(),
        });
    }
    let (m, mm_rev) = shirokov_m(x, sig)?;
    let s0 = mm_rev.scalar_part();
    let purity = mm_rev.off_grade_residual(0);
    let scale = m.max_abs().max(1.0);
    let generic_ok = s0 > GENERICITY_FLOOR * scale * scale;
    let y = if generic_ok {
        Some(canonical_blade_sign(&m.scale(&(1.0 / s0.sqrt()))))
    } else {
        None
    };
    Ok(ShirokovResult {
        m,
        mm_rev_scalar: s0,
        purity_residual: purity,
        y,
        generic_ok,
    })
}

// ------------------------------------------------------------- dispatcher

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Auto,
    Givens,
    Polar,
    Agnostic,
    Shirokov,
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Strategy> {
        Some(match s {
            "auto" => Strategy::Auto,
            "givens" => Strategy::Givens,
            "polar" => Strategy::Polar,
            "agnostic" => Strategy::Agnostic,
            "shirokov" => Strategy::Shirokov,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Givens => "givens",
            Strategy::Polar => "polar",
            Strategy::Agnostic => "agnostic",
            Strategy::Shirokov => "shirokov",
        }
    }

    /// The concrete strategy `auto` resolves to for a signature.
    pub fn resolve(&self, sig: Signature) -> Strategy {
        if *self != Strategy::Auto {
            return *self;
        }
        match (sig.p, sig.q) {
            (2, 1) => Strategy::Polar,
            (2, 2) | (3, 2) | (4, 1) => Strategy::Givens,
            _ => Strategy::Agnostic,
        }
    }

    /// Strategies applicable to a signature.
    pub fn applicable(sig: Signature) -> Vec<Strategy> {
        let mut v = Vec::new();
        match (sig.p, sig.q) {
            (2, 1) => v.push(Strategy::Polar),
            (4, 1) => {
                v.push(Strategy::Givens);
                v.push(Strategy::Polar);
            }
            (2, 2) | (3, 2) => v.push(Strategy::Givens),
            _ => {}
        }
        if sig.n() <= 10 {
            v.push(Strategy::Agnostic);
        }
        if sig.n() <= 8 {
            v.push(Strategy::Shirokov);
        }
        v
    }
}

/// Result of the strategy dispatcher, carrying whichever artifacts the
/// chosen route produces.
#[derive(Clone, Debug)]
pub struct InversionOutcome {
    pub strategy: Strategy,
    pub spin_pair: Option<PreimagePair>,
    pub blade_preimage: Option<Multivector<f64>>,
    pub polar_factors: Option<(Mat<f64>, Mat<f64>)>,
    pub factors: Option<Vec<GivensFactor>>,
    pub warnings: Vec<String>,
    /// Residual of the strategy's own forward map.
    pub residual: f64,
    /// Residual recomputed through the independent conjugation oracle.
    pub oracle_residual: f64,
}

/// Largest deviation of the conjugation-oracle image of a preimage from the
/// target, independent of the strategy's own forward map.
pub fn oracle_residual(
    x: &Mat<f64>,
    sig: Signature,
    spin: Option<&SpinElement>,
    blade: Option<&Multivector<f64>>,
) -> Result<f64, Error> {
    if let Some(el) = spin {
        let rep = cached_rep(sig)?;
        let g = generic_phi(&rep.generators(), &el.rep_matrix(), 1e-6)?;
        return Ok(g.max_diff(x));
    }
    if let Some(mv) = blade {
        let g = mv.conjugation_action(1e-6)?;
        return Ok(g.max_diff(x));
    }
    Err(Error::Precondition("no preimage to check".into()))
}

/// Convert a blade-level preimage into the compact spin representation of a
/// cataloged signature.
pub fn blade_to_spin(mv: &Multivector<f64>, sig: Signature) -> Result<SpinElement, Error> {
    let rep = cached_rep(sig)?;
    SpinElement::from_rep(sig, &mv.matrix_rep(rep), 1e-7)
}

/// Invert a target with the requested strategy. With `strict` set, a
/// Shirokov genericity failure is an error; otherwise it falls back to the
/// agnostic route with a warning.
pub fn invert(
    x: &Mat<f64>,
    sig: Signature,
    strategy: Strategy,
    tol: f64,
    strict: bool,
) -> Result<InversionOutcome, Error> {
    let resolved = strategy.resolve(sig);
    let mut out = InversionOutcome {
        strategy: resolved,
        spin_pair: None,
        blade_preimage: None,
        polar_factors: None,
        factors: None,
        warnings: Vec::new(),
        residual: f64::NAN,
        oracle_residual: f64::NAN,
    };
    match resolved {
        Strategy::Auto => unreachable!("resolve removed Auto"),
        Strategy::Polar => match (sig.p, sig.q) {
            (2, 1) => {
                let r = invert_21(x, tol)?;
                out.residual = r.pair.residual;
                out.oracle_residual = oracle_residual(x, sig, Some(&r.pair.plus), None)?;
                out.spin_pair = Some(r.pair);
                out.polar_factors = Some((r.v, r.p));
                out.warnings.extend(r.warnings);
            }
            (4, 1) => {
                let r = invert_41_polar(x, tol)?;
                out.residual = r.pair.residual;
                out.oracle_residual = oracle_residual(x, sig, Some(&r.pair.plus), None)?;
                out.spin_pair = Some(r.pair);
                out.polar_factors = Some((r.v, r.p));
                out.warnings.extend(r.warnings);
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "polar inversion covers (2,1) and (4,1); got {sig}"
                )))
            }
        },
        Strategy::Givens => {
            let r = invert_via_givens(x, sig, tol)?;
            out.residual = r.pair.residual;
            out.oracle_residual = oracle_residual(x, sig, Some(&r.pair.plus), None)?;
            out.spin_pair = Some(r.pair);
            out.factors = Some(r.factors);
            out.warnings.extend(r.warnings);
        }
        Strategy::Agnostic => {
            let mv = agnostic_invert(x, sig, tol)?;
            out.oracle_residual = oracle_residual(x, sig, None, Some(&mv))?;
            out.residual = out.oracle_residual;
            out.blade_preimage = Some(mv);
        }
        Strategy::Shirokov => {
            let r = shirokov_invert(x, sig, tol)?;
            if let Some(y) = r.y {
                out.oracle_residual = oracle_residual(x, sig, None, Some(&y))?;
                out.residual = out.oracle_residual;
                out.blade_preimage = Some(y);
            } else if strict {
                return Err(Error::Genericity(r.mm_rev_scalar));
            } else {
                out.warnings.push(format!(
                    "genericity failure (MM^rev scalar {:.3e}); fell back to the agnostic route",
                    r.mm_rev_scalar
                ));
                let mv = agnostic_invert(x, sig, tol)?;
                out.oracle_residual = oracle_residual(x, sig, None, Some(&mv))?;
                out.residual = out.oracle_residual;
                out.blade_preimage = Some(mv);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::phi_22;

    fn sig21() -> Signature {
        Signature::new(2, 1)
    }

    #[test]
    fn posdef_21_identity_and_roundtrip() {
        assert!(invert_posdef_21(&Mat::identity(3), 1e-9)
            .unwrap()
            .max_diff(&Mat::identity(2))
            < 1e-12);

        // X11 = 1 branch: Phi of a diagonal W
        let w = Mat::from_rows(vec![vec![1.9, 0.0], vec![0.0, 1.0 / 1.9]]);
        let x = phi_21(&w, 1e-9).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() < 1e-12);
        let y = invert_posdef_21(&x, 1e-9).unwrap();
        assert!(y.max_diff(&w) < 1e-10);

        // generic branch
        let w = Mat::from_rows(vec![vec![1.4, 0.3], vec![0.3, (1.0 + 0.09) / 1.4]]);
        let x = phi_21(&w, 1e-9).unwrap();
        let y = invert_posdef_21(&x, 1e-9).unwrap();
        assert!(y.max_diff(&w) < 1e-10);
    }

    #[test]
    fn invert_21_pure_rotation_and_boost() {
        let sig = sig21();
        let th = 1.3f64;
        let x = givens_embed(&GivensFactor::standard(1, 2, th), sig).unwrap();
        let r = invert_21(&x, 1e-9).unwrap();
        assert!(r.p.max_diff(&Mat::identity(3)) < 1e-10);
        assert!(r.pair.residual < 1e-10);
        if let SpinElement::S21(y) = &r.pair.plus {
            assert!((y[(0, 0)] - (th / 2.0).cos()).abs() < 1e-10);
        } else {
            panic!("wrong representation");
        }

        let x = givens_embed(&GivensFactor::hyperbolic(1, 3, 0.9), sig).unwrap();
        let r = invert_21(&x, 1e-9).unwrap();
        assert!(r.v.max_diff(&Mat::identity(3)) < 1e-10);
        if let SpinElement::S21(y) = &r.pair.plus {
            assert!(y.is_posdef_sym(1e-10));
        } else {
            panic!("wrong representation");
        }
    }

    #[test]
    fn invert_21_theta_zero_edge() {
        let sig = sig21();
        let x = givens_embed(&GivensFactor::hyperbolic(2, 3, 0.4), sig).unwrap();
        let r = invert_21(&x, 1e-9).unwrap();
        assert!(r.pair.residual < 1e-10);
    }

    #[test]
    fn givens_22_table_rows() {
        // boost rows: H13 -> diag pair, entries e^{+-beta/2}
        let b = 0.77f64;
        let pair = invert_givens_22(&GivensFactor::hyperbolic(1, 3, b)).unwrap();
        assert!(pair.residual < 1e-12);
        if let SpinElement::S22(a, bb) = &pair.plus {
            let e = (b / 2.0).exp();
            assert!((a[(0, 0)] - e).abs() < 1e-12);
            assert!((a[(1, 1)] - 1.0 / e).abs() < 1e-12);
            assert!((bb[(0, 0)] - 1.0 / e).abs() < 1e-12);
            assert!((bb[(1, 1)] - e).abs() < 1e-12);
            assert!(a[(0, 1)].abs() + a[(1, 0)].abs() < 1e-12);
        } else {
            panic!("wrong representation");
        }
        // untabulated factor kind is rejected
        assert!(matches!(
            invert_givens_22(&GivensFactor::hyperbolic(1, 4, b)),
            Err(Error::FactorNotTabulated(_))
        ));
    }

    #[test]
    fn givens_32_h34_row() {
        let b = 0.61f64;
        let pair = invert_givens_32(&GivensFactor::hyperbolic(3, 4, b)).unwrap();
        assert!(pair.residual < 1e-12);
        let (ch, sh) = ((b / 2.0).cosh(), (b / 2.0).sinh());
        let expect = Mat::from_rows(vec![
            vec![ch, 0.0, -sh, 0.0],
            vec![0.0, ch, 0.0, sh],
            vec![-sh, 0.0, ch, 0.0],
            vec![0.0, sh, 0.0, ch],
        ]);
        if let SpinElement::S32(y) = &pair.plus {
            let d = y.max_diff(&expect).min(y.neg().max_diff(&expect));
            assert!(d < 1e-12);
        } else {
            panic!("wrong representation");
        }
    }

    #[test]
    fn givens_41_r13_row() {
        let th = 0.83f64;
        let pair = invert_givens_41(&GivensFactor::standard(1, 3, th)).unwrap();
        assert!(pair.residual < 1e-11);
        if let SpinElement::S41(y) = &pair.plus {
            // real rotation by the half angle
            let (s, c) = (th / 2.0).sin_cos();
            assert!((y[(0, 0)].w - c).abs() < 1e-12);
            assert!((y[(0, 1)].w - s).abs() < 1e-12);
            assert!((y[(1, 0)].w + s).abs() < 1e-12);
            assert!(y[(0, 0)].x.abs() + y[(0, 0)].y.abs() + y[(0, 0)].z.abs() < 1e-12);
        } else {
            panic!("wrong representation");
        }
    }

    #[test]
    fn via_givens_roundtrip_22() {
        let sig = Signature::new(2, 2);
        let x = givens_embed(&GivensFactor::standard(1, 2, 0.9), sig)
            .unwrap()
            .mul(&givens_embed(&GivensFactor::hyperbolic(1, 3, 0.7), sig).unwrap())
            .mul(&givens_embed(&GivensFactor::standard(3, 4, -1.2), sig).unwrap());
        let r = invert_via_givens(&x, sig, 1e-9).unwrap();
        assert!(r.pair.residual < 1e-10);
        // double cover: the pair projects to the same target
        if let (SpinElement::S22(a, b), SpinElement::S22(am, bm)) = (&r.pair.plus, &r.pair.minus) {
            assert!(phi_22(a, b, 1e-7)
                .unwrap()
                .max_diff(&phi_22(am, bm, 1e-7).unwrap())
                < 1e-12);
        }
    }

    #[test]
    fn polar_41_identity_and_posdef() {
        let id5 = Mat::identity(5);
        let r = invert_41_polar(&id5, 1e-9).unwrap();
        assert!(r.pair.residual < 1e-12);

        // positive definite target: exp of a symmetric so(4,1) element
        let sig = Signature::new(4, 1);
        let mut q = Mat::zeros(5, 5);
        for (k, v) in [0.4, -0.3, 0.2, 0.6].iter().enumerate() {
            q[(k, 4)] = *v;
            q[(4, k)] = *v;
        }
        let x = q.expm();
        assert!(so_plus_membership(&x, sig, 1e-9).ok);
        let r = invert_41_polar(&x, 1e-9).unwrap();
        assert!(r.pair.residual < 1e-9);
        // exactly one of the pair is positive definite on the complex picture
        let pd = |el: &SpinElement| -> bool {
            if let SpinElement::S41(y) = el {
                crate::mat::theta_h(y).is_posdef_hermitian(1e-9)
            } else {
                false
            }
        };
        assert!(pd(&r.pair.plus) ^ pd(&r.pair.minus));
    }

    #[test]
    fn agnostic_examples() {
        let sig = sig21();
        let x = Mat::identity(3);
        let mv = agnostic_invert(&x, sig, 1e-9).unwrap();
        assert!((mv.scalar_part() - 1.0).abs() < 1e-12);
        assert!(mv.max_diff(&Multivector::one(sig)) < 1e-12);

        let b = 0.9f64;
        let x = givens_embed(&GivensFactor::hyperbolic(1, 3, b), sig).unwrap();
        let mv = agnostic_invert(&x, sig, 1e-9).unwrap();
        assert!((mv.scalar_part() - (b / 2.0).cosh()).abs() < 1e-12);
        // coefficient of e1 e3 (mask 0b101)
        assert!((mv.coeff(0b101) + (b / 2.0).sinh()).abs() < 1e-12);
        assert!(mv.conjugation_action(1e-9).unwrap().max_diff(&x) < 1e-11);
    }

    #[test]
    fn shirokov_cross_checks() {
        let sig = sig21();
        let x = givens_embed(&GivensFactor::standard(1, 2, 0.83), sig)
            .unwrap()
            .mul(&givens_embed(&GivensFactor::hyperbolic(1, 3, 0.61), sig).unwrap());
        let r = shirokov_invert(&x, sig, 1e-9).unwrap();
        assert!(r.generic_ok);
        assert!(r.purity_residual < 1e-12 * r.mm_rev_scalar.max(1.0));
        let y = r.y.unwrap();
        assert!(y.conjugation_action(1e-9).unwrap().max_diff(&x) < 1e-11);
        let a = agnostic_invert(&x, sig, 1e-9).unwrap();
        let d = y.max_diff(&a).min(y.neg().max_diff(&a));
        assert!(d < 1e-11);
    }

    #[test]
    fn shirokov_identity_collapses() {
        let sig = sig21();
        let r = shirokov_invert(&Mat::identity(3), sig, 1e-9).unwrap();
        let y = r.y.unwrap();
        assert!(y.max_diff(&Multivector::one(sig)) < 1e-12);
    }

    #[test]
    fn dispatcher_strategies_agree() {
        let sig = Signature::new(4, 1);
        let x = givens_embed(&GivensFactor::standard(1, 2, 0.9), sig)
            .unwrap()
            .mul(&givens_embed(&GivensFactor::hyperbolic(2, 5, 0.7), sig).unwrap())
            .mul(&givens_embed(&GivensFactor::standard(3, 4, -0.4), sig).unwrap());
        let gv = invert(&x, sig, Strategy::Givens, 1e-9, false).unwrap();
        let pl = invert(&x, sig, Strategy::Polar, 1e-9, false).unwrap();
        let ag = invert(&x, sig, Strategy::Agnostic, 1e-9, false).unwrap();
        let sh = invert(&x, sig, Strategy::Shirokov, 1e-9, false).unwrap();
        assert!(gv.residual < 1e-9 && pl.residual < 1e-9);
        assert!(ag.residual < 1e-9 && sh.residual < 1e-9);
        let a = gv.spin_pair.unwrap().plus;
        let b = pl.spin_pair.unwrap().plus;
        assert!(a.max_diff(&b) < 1e-8);
        let c = blade_to_spin(ag.blade_preimage.as_ref().unwrap(), sig)
            .unwrap()
            .canonical_sign(1e-9);
        let d = blade_to_spin(sh.blade_preimage.as_ref().unwrap(), sig)
            .unwrap()
            .canonical_sign(1e-9);
        assert!(a.max_diff(&c) < 1e-8);
        assert!(a.max_diff(&d) < 1e-8);
    }
}
