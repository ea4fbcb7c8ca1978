//! Catalog of concrete one-vector bases for Cl(p,q), the three iterative
//! extension constructions, and the exact axiom / BP checkers.
//!
//! Every cataloged matrix has entries in {0, +-1} (times a quaternion unit),
//! so all checks run exactly over `Ratio<i64>`. Bases transcribed from the
//! bundled reference tables that fail the checks are kept verbatim as
//! exhibits (`verbatim_exhibit = true`) next to a corrected or reconstructed
//! working basis under the plain name; the verifier reports the failures
//! rather than hiding them.

use crate::blades::BladeRep;
use crate::error::Error;
use crate::group::Signature;
use crate::mat::{Mat, QMat};
use crate::quat::Quaternion;
use num_rational::Ratio;
use num_traits::Zero;
use once_cell::sync::Lazy;

pub type Rat = Ratio<i64>;
pub type QRat = Quaternion<Rat>;
pub type QRatMat = Mat<QRat>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarField {
    Real,
    Complex,
    Quaternion,
}

#[derive(Clone)]
pub struct OneVectorBasis {
    pub name: String,
    pub sig: Signature,
    pub field: ScalarField,
    pub mats: Vec<QRatMat>,
    /// Entry kept exactly as transcribed even though it fails verification.
    pub verbatim_exhibit: bool,
}

impl OneVectorBasis {
    pub fn dim(&self) -> usize {
        self.mats.first().map_or(1, |m| m.rows())
    }

    pub fn float_mats(&self) -> Vec<QMat> {
        self.mats
            .iter()
            .map(|m| {
                m.map(|q| Quaternion::new(to_f64(q.w), to_f64(q.x), to_f64(q.y), to_f64(q.z)))
            })
            .collect()
    }

    pub fn blade_rep(&self) -> BladeRep {
        BladeRep::new(self.sig, &self.float_mats())
    }
}

fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

// ---- constructors for the catalog data ----

fn ri(v: i64) -> QRat {
    Quaternion::real(Ratio::from_integer(v))
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> QRatMat {
    Mat::from_rows(vec![vec![ri(a), ri(b)], vec![ri(c), ri(d)]])
}

fn i2() -> QRatMat {
    m2(1, 0, 0, 1)
}
fn sx() -> QRatMat {
    m2(0, 1, 1, 0)
}
fn sz() -> QRatMat {
    m2(1, 0, 0, -1)
}
/// The real matrix `i sigma_y`.
fn jr() -> QRatMat {
    m2(0, 1, -1, 0)
}

fn kron_all(parts: &[QRatMat]) -> QRatMat {
    let mut out = QRatMat::identity(1);
    for p in parts {
        out = out.kron(p);
    }
    out
}

/// Multiply a real matrix by a quaternion unit: 0 = i, 1 = j, 2 = k.
fn unit_scale(unit: usize, m: &QRatMat) -> QRatMat {
    let u = match unit {
        0 => QRat::i(),
        1 => QRat::j(),
        _ => QRat::k(),
    };
    m.scale(&u)
}

fn basis(
    name: &str,
    sig: (usize, usize),
    field: ScalarField,
    mats: Vec<QRatMat>,
    verbatim_exhibit: bool,
) -> OneVectorBasis {
    OneVectorBasis {
        name: name.to_string(),
        sig: Signature::new(sig.0, sig.1),
        field,
        mats,
        verbatim_exhibit,
    }
}

/// The iterative-construction tensor factor for Cl(m,0) -> Cl(m+8,0).
fn ic2_l() -> QRatMat {
    kron_all(&[sx(), sx(), jr(), jr()])
}

/// The iterative-construction tensor factor for Cl(0,m) -> Cl(0,m+8).
fn ic3_k() -> QRatMat {
    kron_all(&[jr(), jr(), sz(), sz()])
}

fn b80_mats() -> Vec<QRatMat> {
    vec![
        kron_all(&[i2(), i2(), i2(), sz()]),
        kron_all(&[i2(), i2(), i2(), sx()]),
        kron_all(&[sx(), jr(), i2(), jr()]).neg(),
        kron_all(&[jr(), i2(), i2(), jr()]).neg(),
        kron_all(&[sz(), jr(), sz(), jr()]).neg(),
        kron_all(&[sz(), jr(), sx(), jr()]).neg(),
        kron_all(&[sz(), i2(), jr(), jr()]),
        kron_all(&[sx(), sz(), jr(), jr()]).neg(),
    ]
}

fn b08_mats() -> Vec<QRatMat> {
    vec![
        kron_all(&[i2(), i2(), sz(), jr()]),
        kron_all(&[i2(), i2(), jr(), i2()]),
        // third entry corrected: the transcribed I (x) sz (x) sz (x) isy
        // commutes with five of its partners; this is the unique word over
        // {I, sx, sz, isy} completing the octet
        kron_all(&[i2(), sx(), sx(), jr()]),
        kron_all(&[i2(), sz(), sx(), jr()]),
        kron_all(&[i2(), jr(), sx(), i2()]),
        kron_all(&[i2(), jr(), sz(), sx()]),
        kron_all(&[sx(), jr(), sz(), sz()]),
        kron_all(&[sz(), jr(), sz(), sz()]),
    ]
}

fn b06_mats() -> Vec<QRatMat> {
    vec![
        kron_all(&[sz(), jr(), i2()]),
        kron_all(&[jr(), i2(), i2()]),
        kron_all(&[sx(), jr(), sx()]),
        kron_all(&[sx(), jr(), sz()]),
        // transcribed with a size-breaking extra I2 factor; dropped
        kron_all(&[sx(), i2(), jr()]),
        kron_all(&[sz(), sx(), jr()]),
    ]
}

#[allow(clippy::vec_init_then_push)]
fn build_catalog() -> Vec<OneVectorBasis> {
    use ScalarField::*;
    let mut cat = Vec::new();

    // --- Cl(m, 0) ---
    cat.push(basis("b00", (0, 0), Real, vec![], false));
    cat.push(basis("b10", (1, 0), Real, vec![sx()], false));
    cat.push(basis("b20", (2, 0), Real, vec![sz(), sx()], false));
    // third entry transcribed as i sigma_y, which squares to -I; the working
    // basis uses sigma_y itself
    cat.push(basis(
        "b30_verbatim",
        (3, 0),
        Real,
        vec![sz(), sx(), jr()],
        true,
    ));
    cat.push(basis(
        "b30",
        (3, 0),
        Complex,
        vec![sz(), sx(), unit_scale(0, &jr().neg())],
        false,
    ));
    let b40 = vec![
        unit_scale(0, &jr()),
        unit_scale(1, &jr()),
        unit_scale(2, &jr()),
        sz(),
    ];
    cat.push(basis("b40", (4, 0), Quaternion, b40.clone(), false));
    // transcribed pentad fails (squares and anticommutation); working basis
    // doubles the quartet and appends the graded volume element
    cat.push(basis(
        "b50_verbatim",
        (5, 0),
        Quaternion,
        vec![
            unit_scale(0, &kron_all(&[sx(), sz()])),
            unit_scale(1, &kron_all(&[sx(), sz()])),
            unit_scale(2, &kron_all(&[sx(), sz()])),
            kron_all(&[sz(), sz()]),
            kron_all(&[sx(), sz()]),
        ],
        true,
    ));
    let omega = sx().neg(); // product of the b40 quartet
    let mut b50: Vec<QRatMat> = b40.iter().map(|v| v.block_diag(v)).collect();
    b50.push(omega.block_diag(&omega.neg()));
    cat.push(basis("b50", (5, 0), Quaternion, b50, false));
    cat.push(basis(
        "b60",
        (6, 0),
        Quaternion,
        vec![
            kron_all(&[i2(), sz()]),
            kron_all(&[i2(), sx()]),
            unit_scale(0, &kron_all(&[i2(), jr()])),
            unit_scale(1, &kron_all(&[i2(), jr()])),
            unit_scale(2, &kron_all(&[sx(), jr()])),
            unit_scale(2, &kron_all(&[sz(), jr()])),
        ],
        false,
    ));
    cat.push(basis(
        "b70",
        (7, 0),
        Complex,
        vec![
            kron_all(&[i2(), i2(), sz()]),
            kron_all(&[i2(), i2(), sx()]),
            unit_scale(0, &kron_all(&[sz(), i2(), jr()]).neg()),
            kron_all(&[jr(), i2(), jr()]),
            unit_scale(0, &kron_all(&[sx(), sx(), jr()]).neg()),
            unit_scale(0, &kron_all(&[sx(), sz(), jr()]).neg()),
            kron_all(&[sx(), jr().neg(), jr()]),
        ],
        false,
    ));
    cat.push(basis("b80", (8, 0), Real, b80_mats(), false));

    // --- Cl(0, m) ---
    let one = || QRatMat::identity(1);
    cat.push(basis("b01", (0, 1), Quaternion, vec![unit_scale(0, &one())], false));
    cat.push(basis(
        "b02",
        (0, 2),
        Quaternion,
        vec![unit_scale(0, &one()), unit_scale(1, &one())],
        false,
    ));
    let diag_q = |u: usize| unit_scale(u, &i2());
    cat.push(basis(
        "b03",
        (0, 3),
        Quaternion,
        vec![diag_q(0), diag_q(1), diag_q(2)],
        false,
    ));
    // fourth entry commutes with the third as transcribed; flipping the sign
    // of the second diagonal slot of the third entry restores the axioms
    cat.push(basis(
        "b04_verbatim",
        (0, 4),
        Quaternion,
        vec![diag_q(0), diag_q(1), diag_q(2), unit_scale(2, &sx())],
        true,
    ));
    cat.push(basis(
        "b04",
        (0, 4),
        Quaternion,
        vec![diag_q(0), diag_q(1), unit_scale(2, &sz()), unit_scale(2, &sx())],
        false,
    ));
    cat.push(basis(
        "b05",
        (0, 5),
        Quaternion,
        vec![
            unit_scale(0, &kron_all(&[sz(), i2()])),
            kron_all(&[jr(), i2()]),
            unit_scale(0, &kron_all(&[sx(), sx()])),
            unit_scale(0, &kron_all(&[sx(), sz()])),
            kron_all(&[sx(), jr()]),
        ],
        false,
    ));
    cat.push(basis("b06", (0, 6), Real, b06_mats(), false));
    let mut b07: Vec<QRatMat> = b06_mats().iter().map(|z| z.block_diag(z)).collect();
    let z7 = kron_all(&[sz(), sz(), jr()]);
    b07.push(z7.block_diag(&z7));
    cat.push(basis("b07", (0, 7), Real, b07, false));
    cat.push(basis(
        "b08_verbatim",
        (0, 8),
        Real,
        {
            let mut v = b08_mats();
            v[2] = kron_all(&[i2(), sz(), sz(), jr()]);
            v
        },
        true,
    ));
    cat.push(basis("b08", (0, 8), Real, b08_mats(), false));

    // --- the concrete signatures used by the covering maps ---
    cat.push(basis("b11_1", (1, 1), Real, vec![sx(), jr()], false));
    cat.push(basis("b11_2", (1, 1), Real, vec![sz(), jr()], false));
    cat.push(basis(
        "b21",
        (2, 1),
        Real,
        vec![
            kron_all(&[sz(), sz()]),
            kron_all(&[sx(), i2()]),
            kron_all(&[jr(), i2()]),
        ],
        false,
    ));
    cat.push(basis(
        "b22",
        (2, 2),
        Real,
        vec![
            kron_all(&[sz(), sx()]),
            kron_all(&[sx(), i2()]),
            kron_all(&[sz(), jr()]),
            kron_all(&[jr(), i2()]),
        ],
        false,
    ));
    cat.push(basis(
        "b32",
        (3, 2),
        Real,
        vec![
            kron_all(&[sx(), i2(), i2()]),
            kron_all(&[sz(), sx(), i2()]),
            kron_all(&[sz(), sz(), sz()]),
            kron_all(&[jr(), i2(), i2()]),
            kron_all(&[sz(), jr(), i2()]),
        ],
        false,
    ));
    cat.push(basis(
        "b41",
        (4, 1),
        Complex,
        vec![
            kron_all(&[sz(), sx()]),
            unit_scale(0, &kron_all(&[jr(), i2()]).neg()), // sigma_y (x) I
            kron_all(&[sz(), sz()]),
            kron_all(&[sx(), i2()]),
            kron_all(&[sz(), jr()]).neg(),
        ],
        false,
    ));
    cat
}

static CATALOG: Lazy<Vec<OneVectorBasis>> = Lazy::new(build_catalog);

pub fn catalog() -> &'static [OneVectorBasis] {
    &CATALOG
}

pub fn basis_by_name(name: &str) -> Option<&'static OneVectorBasis> {
    CATALOG.iter().find(|b| b.name == name)
}

/// The working (non-exhibit) cataloged basis for a signature, if any.
pub fn basis_for(sig: Signature) -> Result<&'static OneVectorBasis, Error> {
    CATALOG
        .iter()
        .find(|b| b.sig == sig && !b.verbatim_exhibit)
        .ok_or(Error::NotCataloged(sig.p, sig.q))
}

/// A working basis for any signature with n <= 12: cataloged directly, or
/// reached from a cataloged root by repeated IC1 extension.
pub fn constructible_basis(sig: Signature) -> Result<OneVectorBasis, Error> {
    if let Ok(b) = basis_for(sig) {
        return Ok(b.clone());
    }
    let k = sig.p.min(sig.q);
    let root = basis_for(Signature::new(sig.p - k, sig.q - k))?;
    let mut out = root.clone();
    for _ in 0..k {
        out = ic1_extend(&out);
    }
    Ok(out)
}

/// IC1: from a basis for Cl(p,q) build one for Cl(p+1,q+1) out of
/// `sigma_z (x) V_j` and the two off-diagonal block matrices.
pub fn ic1_extend(b: &OneVectorBasis) -> OneVectorBasis {
    let d = b.dim();
    let id = QRatMat::identity(d);
    let zero = QRatMat::zeros(d, d);
    let e = QRatMat::block2(&zero, &id, &id, &zero);
    let f = QRatMat::block2(&zero, &id, &id.neg(), &zero);
    let graded: Vec<QRatMat> = b.mats.iter().map(|v| v.block_diag(&v.neg())).collect();
    let mut mats = Vec::with_capacity(b.sig.n() + 2);
    mats.push(e);
    mats.extend_from_slice(&graded[..b.sig.p]);
    mats.push(f);
    mats.extend_from_slice(&graded[b.sig.p..]);
    OneVectorBasis {
        name: format!("ic1({})", b.name),
        sig: Signature::new(b.sig.p + 1, b.sig.q + 1),
        field: b.field,
        mats,
        verbatim_exhibit: false,
    }
}

/// IC2: from a basis for Cl(m,0) build one for Cl(m+8,0) with the octet
/// `I (x) V_i` plus `E_j (x) L`.
pub fn ic2_extend(b: &OneVectorBasis) -> Result<OneVectorBasis, Error> {
    if b.sig.q != 0 {
        return Err(Error::Precondition(format!(
            "ic2 extends (m,0) bases, got {}",
            b.sig
        )));
    }
    let d = b.dim();
    let id = QRatMat::identity(d);
    let l = ic2_l();
    let mut mats: Vec<QRatMat> = b80_mats().iter().map(|v| id.kron(v)).collect();
    mats.extend(b.mats.iter().map(|e| e.kron(&l)));
    Ok(OneVectorBasis {
        name: format!("ic2({})", b.name),
        sig: Signature::new(b.sig.p + 8, 0),
        field: b.field,
        mats,
        verbatim_exhibit: false,
    })
}

/// IC3: from a basis for Cl(0,m) build one for Cl(0,m+8) with the octet
/// `I (x) V_i` plus `F_j (x) K`.
pub fn ic3_extend(b: &OneVectorBasis) -> Result<OneVectorBasis, Error> {
    if b.sig.p != 0 {
        return Err(Error::Precondition(format!(
            "ic3 extends (0,m) bases, got {}",
            b.sig
        )));
    }
    let d = b.dim();
    let id = QRatMat::identity(d);
    let k = ic3_k();
    let mut mats: Vec<QRatMat> = b08_mats().iter().map(|v| id.kron(v)).collect();
    mats.extend(b.mats.iter().map(|f| f.kron(&k)));
    Ok(OneVectorBasis {
        name: format!("ic3({})", b.name),
        sig: Signature::new(0, b.sig.q + 8),
        field: b.field,
        mats,
        verbatim_exhibit: false,
    })
}

// ---- exact checkers ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomIssue {
    /// `V_i^2 != +-I` with the sign demanded by its slot.
    Square { index: usize },
    /// `V_i V_j + V_j V_i != 0`.
    Anticommute { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BpIssue {
    /// `V_i^* != +-V_i`.
    NotSigned { index: usize },
    /// trace inner product of a distinct pair fails to vanish.
    NotOrthogonal { i: usize, j: usize },
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub issues: Vec<AxiomIssue>,
}

#[derive(Clone, Debug, Default)]
pub struct BpReport {
    /// For each element, the sign s with `V_i^* = s V_i` when one exists.
    pub bp1_signs: Vec<Option<i8>>,
    pub issues: Vec<BpIssue>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl BpReport {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

fn axioms_generic<T: crate::scalar::Scalar>(mats: &[Mat<Quaternion<T>>], p: usize) -> AxiomReport {
    let n = mats.len();
    let d = mats.first().map_or(1, |m| m.rows());
    let mut report = AxiomReport::default();
    for (idx, v) in mats.iter().enumerate() {
        let want = if idx < p {
            Mat::<Quaternion<T>>::identity(d)
        } else {
            Mat::<Quaternion<T>>::identity(d).neg()
        };
        if v.mul(v) != want {
            report.issues.push(AxiomIssue::Square { index: idx + 1 });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let anti = mats[i].mul(&mats[j]).add(&mats[j].mul(&mats[i]));
            if anti.iter().any(|q| !q.is_zero()) {
                report
                    .issues
                    .push(AxiomIssue::Anticommute { i: i + 1, j: j + 1 });
            }
        }
    }
    report
}

fn bp_generic<T: crate::scalar::Scalar>(
    mats: &[Mat<Quaternion<T>>],
    field: ScalarField,
) -> BpReport {
    let n = mats.len();
    let mut report = BpReport::default();
    for (idx, v) in mats.iter().enumerate() {
        let star = v.conj_transpose();
        if star == *v {
            report.bp1_signs.push(Some(1));
        } else if star == v.neg() {
            report.bp1_signs.push(Some(-1));
        } else {
            report.bp1_signs.push(None);
            report.issues.push(BpIssue::NotSigned { index: idx + 1 });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let t = mats[i].conj_transpose().mul(&mats[j]).trace();
            let bad = match field {
                ScalarField::Quaternion => !t.w.is_zero(),
                // full trace must vanish over R and C
                _ => !t.is_zero(),
            };
            if bad {
                report
                    .issues
                    .push(BpIssue::NotOrthogonal { i: i + 1, j: j + 1 });
            }
        }
    }
    report
}

impl OneVectorBasis {
    /// Integer view of the matrices when every entry is an integer (true
    /// for the whole catalog: signed permutation matrices). Products of such
    /// matrices cannot overflow, so the checks stay exact and fast.
    fn integer_mats(&self) -> Option<Vec<Mat<Quaternion<i64>>>> {
        let conv = |m: &QRatMat| -> Option<Mat<Quaternion<i64>>> {
            let mut out = Mat::zeros(m.rows(), m.cols());
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let q = m[(i, j)];
                    for r in [q.w, q.x, q.y, q.z] {
                        if !r.denom().eq(&1) {
                            return None;
                        }
                    }
                    out[(i, j)] =
                        Quaternion::new(*q.w.numer(), *q.x.numer(), *q.y.numer(), *q.z.numer());
                }
            }
            Some(out)
        };
        self.mats.iter().map(conv).collect()
    }
}

/// Exact check of the defining relations: squares are +I on the first p
/// slots and -I on the rest, and distinct generators anticommute.
pub fn check_axioms(b: &OneVectorBasis) -> AxiomReport {
    match b.integer_mats() {
        Some(mats) => axioms_generic(&mats, b.sig.p),
        None => axioms_generic(&b.mats, b.sig.p),
    }
}

/// Exact check of the two basis properties: every element is Hermitian or
/// anti-Hermitian, and distinct elements are trace-orthogonal (the real part
/// of the trace for quaternionic bases, the full trace otherwise).
pub fn check_bp(b: &OneVectorBasis) -> BpReport {
    match b.integer_mats() {
        Some(mats) => bp_generic(&mats, b.field),
        None => bp_generic(&b.mats, b.field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn working_catalog_passes_exactly() {
        for b in catalog().iter().filter(|b| !b.verbatim_exhibit) {
            assert!(
                check_axioms(b).ok(),
                "axioms fail for {}: {:?}",
                b.name,
                check_axioms(b).issues
            );
            assert!(
                check_bp(b).ok(),
                "BP fails for {}: {:?}",
                b.name,
                check_bp(b).issues
            );
        }
    }

    #[test]
    fn verbatim_exhibits_fail_as_documented() {
        let expected: &[(&str, usize)] = &[
            ("b30_verbatim", 1),
            ("b50_verbatim", 6),
            ("b04_verbatim", 1),
            ("b08_verbatim", 5),
        ];
        for (name, issue_count) in expected {
            let b = basis_by_name(name).unwrap();
            let ax = check_axioms(b);
            assert_eq!(
                ax.issues.len(),
                *issue_count,
                "{name}: {:?}",
                ax.issues
            );
        }
    }

    #[test]
    fn corrupted_basis_is_flagged() {
        // negative control: flip one sign in a healthy basis
        let mut b = basis_by_name("b32").unwrap().clone();
        b.mats[1][(0, 2)] = -b.mats[1][(0, 2)];
        let report = check_axioms(&b);
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, AxiomIssue::Anticommute { .. })));
    }

    #[test]
    fn bp_negative_control() {
        // {sz, sz + sx} violates trace orthogonality: Tr(sz (sz + sx)) = 2
        let b = basis(
            "bad",
            (2, 0),
            ScalarField::Real,
            vec![sz(), sz().add(&sx())],
            false,
        );
        let report = check_bp(&b);
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, BpIssue::NotOrthogonal { i: 1, j: 2 })));
    }

    #[test]
    fn ic1_from_empty_reproduces_the_split_basis() {
        let b = ic1_extend(basis_by_name("b00").unwrap());
        assert_eq!(b.sig, Signature::new(1, 1));
        assert_eq!(b.mats[0], sx());
        assert_eq!(b.mats[1], jr());
        assert!(check_axioms(&b).ok() && check_bp(&b).ok());
    }

    #[test]
    fn ic_extensions_inherit_axioms_and_bp() {
        let b = ic1_extend(basis_by_name("b21").unwrap());
        assert_eq!(b.sig, Signature::new(3, 2));
        assert!(check_axioms(&b).ok() && check_bp(&b).ok());

        let c = ic2_extend(basis_by_name("b10").unwrap()).unwrap();
        assert_eq!(c.sig, Signature::new(9, 0));
        assert_eq!(c.dim(), 32);
        assert!(check_axioms(&c).ok() && check_bp(&c).ok());

        let d = ic3_extend(basis_by_name("b00").unwrap()).unwrap();
        assert_eq!(d.sig, Signature::new(0, 8));
        assert_eq!(d.mats, basis_by_name("b08").unwrap().mats);

        assert!(ic2_extend(basis_by_name("b21").unwrap()).is_err());
        assert!(ic3_extend(basis_by_name("b10").unwrap()).is_err());
    }

    #[test]
    fn constructible_covers_mixed_signatures() {
        let b = constructible_basis(Signature::new(3, 3)).unwrap();
        assert_eq!(b.sig, Signature::new(3, 3));
        assert!(check_axioms(&b).ok() && check_bp(&b).ok());
    }
}
