//! Verification of the bundled reference data against the conjugation
//! oracle, and the registry of documented discrepancies.
//!
//! The crate ships two kinds of reference data: the one-vector basis
//! catalog ([`crate::bases`]) and the preimage-table rows below, both
//! transcribed from classical tables for these covering maps. Every row is
//! classified by forward-mapping it through the independent oracle:
//! `Verified` rows reproduce their factor, `Flipped` rows reproduce the
//! factor with the opposite parameter sign (an orientation convention), and
//! `Fails` rows do not reproduce it either way (the solver uses corrected
//! entries derived from the oracle; the verbatim row is retained here so
//! the discrepancy stays visible).

use crate::covering::{cached_rep, generic_phi, SpinElement};
use crate::error::Error;
use crate::group::{givens_embed, GivensFactor, GivensKind, Signature};
use crate::mat::{theta_h, Mat, QMat};
use crate::quat::Quaternion;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RowStatus {
    Verified,
    Flipped,
    Fails,
}

/// One transcribed preimage-table row.
pub struct ReferenceRow {
    pub id: &'static str,
    pub sig: (usize, usize),
    pub kind: GivensKind,
    pub plane: (usize, usize),
    /// Expected classification, asserted by the verification suite.
    pub expected: RowStatus,
    /// Note shown when the row is not `Verified`.
    pub note: &'static str,
    build: fn(f64) -> SpinElement,
}

fn m2(a: f64, b: f64, c: f64, d: f64) -> Mat<f64> {
    Mat::from_rows(vec![vec![a, b], vec![c, d]])
}

fn m4(rows: [[f64; 4]; 4]) -> Mat<f64> {
    Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

fn q2(q11: Quaternion<f64>, q12: Quaternion<f64>, q21: Quaternion<f64>, q22: Quaternion<f64>) -> QMat {
    Mat::from_rows(vec![vec![q11, q12], vec![q21, q22]])
}

fn qr(w: f64) -> Quaternion<f64> {
    Quaternion::real(w)
}

fn qj(y: f64) -> Quaternion<f64> {
    Quaternion::new(0.0, 0.0, y, 0.0)
}

fn qk(z: f64) -> Quaternion<f64> {
    Quaternion::new(0.0, 0.0, 0.0, z)
}

/// The transcribed rows of the three preimage tables (the generic-branch
/// representative of each; global sign is immaterial under the double
/// cover).
pub fn reference_rows() -> Vec<ReferenceRow> {
    use GivensKind::*;
    use RowStatus::*;
    vec![
        // ---- signature (2,2): pairs (A, B) embedded as 4x4 ----
        ReferenceRow {
            id: "t22.R12",
            sig: (2, 2),
            kind: Standard,
            plane: (1, 2),
            expected: Verified,
            note: "",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S22(m2(c, -s, s, c), m2(c, -s, s, c))
            },
        },
        ReferenceRow {
            id: "t22.R34",
            sig: (2, 2),
            kind: Standard,
            plane: (3, 4),
            expected: Verified,
            note: "",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S22(m2(c, s, -s, c), m2(c, -s, s, c))
            },
        },
        ReferenceRow {
            id: "t22.H13",
            sig: (2, 2),
            kind: Hyperbolic,
            plane: (1, 3),
            expected: Verified,
            note: "",
            build: |b| {
                let e = (b / 2.0).exp();
                SpinElement::S22(m2(e, 0.0, 0.0, 1.0 / e), m2(1.0 / e, 0.0, 0.0, e))
            },
        },
        ReferenceRow {
            id: "t22.H24",
            sig: (2, 2),
            kind: Hyperbolic,
            plane: (2, 4),
            expected: Verified,
            note: "",
            build: |b| {
                let e = (b / 2.0).exp();
                SpinElement::S22(m2(e, 0.0, 0.0, 1.0 / e), m2(e, 0.0, 0.0, 1.0 / e))
            },
        },
        // ---- signature (3,2): 4x4 spin matrices ----
        ReferenceRow {
            id: "t32.R12",
            sig: (3, 2),
            kind: Standard,
            plane: (1, 2),
            expected: Verified,
            note: "",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S32(m4([
                    [c, 0.0, 0.0, s],
                    [0.0, c, s, 0.0],
                    [0.0, -s, c, 0.0],
                    [-s, 0.0, 0.0, c],
                ]))
            },
        },
        ReferenceRow {
            id: "t32.R13",
            sig: (3, 2),
            kind: Standard,
            plane: (1, 3),
            expected: Fails,
            note: "the (2,4) entry is printed as -cos(t/2); the verified entry is -sin(t/2)",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S32(m4([
                    [c, 0.0, s, 0.0],
                    [0.0, c, 0.0, -c],
                    [-s, 0.0, c, 0.0],
                    [0.0, s, 0.0, c],
                ]))
            },
        },
        ReferenceRow {
            id: "t32.R23",
            sig: (3, 2),
            kind: Standard,
            plane: (2, 3),
            expected: Fails,
            note: "the (3,4) entry is printed as -sin(t/2); the verified entry is +sin(t/2)",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S32(m4([
                    [c, s, 0.0, 0.0],
                    [-s, c, 0.0, 0.0],
                    [0.0, 0.0, c, -s],
                    [0.0, 0.0, -s, c],
                ]))
            },
        },
        ReferenceRow {
            id: "t32.R45",
            sig: (3, 2),
            kind: Standard,
            plane: (4, 5),
            expected: Verified,
            note: "the generic-branch display has one garbled line; the parallel branch is used",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S32(m4([
                    [c, 0.0, 0.0, -s],
                    [0.0, c, s, 0.0],
                    [0.0, -s, c, 0.0],
                    [s, 0.0, 0.0, c],
                ]))
            },
        },
        ReferenceRow {
            id: "t32.H14",
            sig: (3, 2),
            kind: Hyperbolic,
            plane: (1, 4),
            expected: Verified,
            note: "",
            build: |b| {
                let e = (b / 2.0).exp();
                SpinElement::S32(m4([
                    [e, 0.0, 0.0, 0.0],
                    [0.0, e, 0.0, 0.0],
                    [0.0, 0.0, 1.0 / e, 0.0],
                    [0.0, 0.0, 0.0, 1.0 / e],
                ]))
            },
        },
        ReferenceRow {
            id: "t32.H25",
            sig: (3, 2),
            kind: Hyperbolic,
            plane: (2, 5),
            expected: Verified,
            note: "",
            build: |b| {
                let e = (b / 2.0).exp();
                SpinElement::S32(m4([
                    [e, 0.0, 0.0, 0.0],
                    [0.0, 1.0 / e, 0.0, 0.0],
                    [0.0, 0.0, e, 0.0],
                    [0.0, 0.0, 0.0, 1.0 / e],
                ]))
            },
        },
        ReferenceRow {
            id: "t32.H34",
            sig: (3, 2),
            kind: Hyperbolic,
            plane: (3, 4),
            expected: Verified,
            note: "",
            build: |b| {
                let (ch, sh) = ((b / 2.0).cosh(), (b / 2.0).sinh());
                SpinElement::S32(m4([
                    [ch, 0.0, -sh, 0.0],
                    [0.0, ch, 0.0, sh],
                    [-sh, 0.0, ch, 0.0],
                    [0.0, sh, 0.0, ch],
                ]))
            },
        },
        // ---- signature (4,1): 2x2 quaternionic ----
        ReferenceRow {
            id: "t41.R14",
            sig: (4, 1),
            kind: Standard,
            plane: (1, 4),
            expected: Verified,
            note: "",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S41(q2(qr(c), qj(-s), qj(-s), qr(c)))
            },
        },
        ReferenceRow {
            id: "t41.R13",
            sig: (4, 1),
            kind: Standard,
            plane: (1, 3),
            expected: Flipped,
            note: "row reproduces the factor with the opposite rotation sense",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S41(q2(qr(c), qr(-s), qr(s), qr(c)))
            },
        },
        ReferenceRow {
            id: "t41.R12",
            sig: (4, 1),
            kind: Standard,
            plane: (1, 2),
            expected: Flipped,
            note: "row reproduces the factor with the opposite rotation sense",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S41(q2(qr(c), qk(-s), qk(-s), qr(c)))
            },
        },
        ReferenceRow {
            id: "t41.H15",
            sig: (4, 1),
            kind: Hyperbolic,
            plane: (1, 5),
            expected: Fails,
            note: "both diagonal entries are printed as exp(-b/2); the verified second entry is exp(+b/2)",
            build: |b| {
                let e = (-b / 2.0).exp();
                SpinElement::S41(q2(qr(e), qr(0.0), qr(0.0), qr(e)))
            },
        },
        ReferenceRow {
            id: "t41.R42",
            sig: (4, 1),
            kind: Standard,
            plane: (2, 4),
            expected: Fails,
            note: "printed diag(c + s i, c - s i) is not in the group; the verified row is diag(c + s i, c + s i) for the reversed sense",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S41(q2(
                    Quaternion::new(c, s, 0.0, 0.0),
                    qr(0.0),
                    qr(0.0),
                    Quaternion::new(c, -s, 0.0, 0.0),
                ))
            },
        },
        ReferenceRow {
            id: "t41.R32",
            sig: (4, 1),
            kind: Standard,
            plane: (2, 3),
            expected: Verified,
            note: "labelled with reversed indices but maps to the (2,3) rotation as-is",
            build: |t| {
                let (s, c) = (t / 2.0).sin_cos();
                SpinElement::S41(q2(
                    Quaternion::new(c, 0.0, 0.0, -s),
                    qr(0.0),
                    qr(0.0),
                    Quaternion::new(c, 0.0, 0.0, s),
                ))
            },
        },
        ReferenceRow {
            id: "t41.H25",
            sig: (4, 1),
            kind: Hyperbolic,
            plane: (2, 5),
            expected: Flipped,
            note: "row reproduces the boost with the opposite rapidity sign",
            build: |b| {
                let (ch, sh) = ((b / 2.0).cosh(), (b / 2.0).sinh());
                SpinElement::S41(q2(qr(ch), qk(-sh), qk(sh), qr(ch)))
            },
        },
        ReferenceRow {
            id: "t41.H35",
            sig: (4, 1),
            kind: Hyperbolic,
            plane: (3, 5),
            expected: Fails,
            note: "off-diagonal printed as sinh(b/2) k; the verified entries are real sinh(b/2)",
            build: |b| {
                let (ch, sh) = ((b / 2.0).cosh(), (b / 2.0).sinh());
                SpinElement::S41(q2(qr(ch), qk(sh), qk(sh), qr(ch)))
            },
        },
        ReferenceRow {
            id: "t41.H45",
            sig: (4, 1),
            kind: Hyperbolic,
            plane: (4, 5),
            expected: Verified,
            note: "",
            build: |b| {
                let (ch, sh) = ((b / 2.0).cosh(), (b / 2.0).sinh());
                SpinElement::S41(q2(qr(ch), qj(-sh), qj(sh), qr(ch)))
            },
        },
    ]
}

/// Forward-map a transcribed row at one parameter value and classify it.
pub fn classify_row(row: &ReferenceRow, param: f64, tol: f64) -> Result<RowStatus, Error> {
    let sig = Signature::new(row.sig.0, row.sig.1);
    let el = (row.build)(param);
    let rep = cached_rep(sig)?;
    let image = match &el {
        SpinElement::S41(y) => {
            // classification must tolerate rows that are not in the group,
            // so conjugate without the membership validation of phi()
            let t = theta_h(y).map(|c| Quaternion::new(c.re, c.im, 0.0, 0.0));
            generic_phi(&rep.generators(), &t, tol)
        }
        other => generic_phi(&rep.generators(), &other.rep_matrix(), tol),
    };
    let image = match image {
        Ok(g) => g,
        Err(_) => return Ok(RowStatus::Fails),
    };
    let f = GivensFactor {
        kind: row.kind,
        i: row.plane.0,
        j: row.plane.1,
        param,
    };
    let forward = givens_embed(&f, sig)?;
    if image.max_diff(&forward) <= tol {
        return Ok(RowStatus::Verified);
    }
    let f_flip = GivensFactor { param: -param, ..f };
    if image.max_diff(&givens_embed(&f_flip, sig)?) <= tol {
        return Ok(RowStatus::Flipped);
    }
    Ok(RowStatus::Fails)
}

/// Classify every row at several parameters; a row must classify the same
/// way at each sample.
pub fn classify_reference_rows(tol: f64) -> Result<Vec<(&'static str, RowStatus)>, Error> {
    let params = [0.83, 0.3, 2.2];
    let mut out = Vec::new();
    for row in reference_rows() {
        let mut status = None;
        for &p in &params {
            let s = classify_row(&row, p, tol)?;
            match status {
                None => status = Some(s),
                Some(prev) if prev == s => {}
                // a sign pattern that only sometimes reproduces the factor
                // counts as failing
                Some(_) => status = Some(RowStatus::Fails),
            }
        }
        out.push((row.id, status.unwrap()));
    }
    Ok(out)
}

/// Documented status of the reference row covering a factor plane, if one
/// exists. Used by inversion reports to flag factors whose tabulated row
/// needed correction.
pub fn row_documentation(
    sig: Signature,
    kind: GivensKind,
    plane: (usize, usize),
) -> Option<(&'static str, RowStatus, &'static str)> {
    reference_rows()
        .into_iter()
        .find(|r| r.sig == (sig.p, sig.q) && r.kind == kind && r.plane == plane)
        .map(|r| (r.id, r.expected, r.note))
}

/// One documented discrepancy between the bundled reference data and the
/// oracle-verified behaviour of this crate.
pub struct Discrepancy {
    pub id: &'static str,
    pub summary: &'static str,
}

/// The discrepancy ledger. Everything here was found by the verification
/// suite; the solver uses the corrected values and these notes keep the
/// differences visible in reports.
pub fn known_discrepancies() -> &'static [Discrepancy] {
    &[
        Discrepancy {
            id: "phi11.display",
            summary: "the classical display of the (1,1) map divides by the fourth power of the parameter; the conjugation oracle gives the second power",
        },
        Discrepancy {
            id: "embed21.display",
            summary: "the transcribed (2,1) even-subalgebra embedding is not unital; the multiplicative embedding negates the second interleaved copy instead",
        },
        Discrepancy {
            id: "alg21.composition",
            summary: "the (2,1) polar route composes as Y = S W (rotation first), mirroring X = V P; the transcribed order W S fails the forward check",
        },
        Discrepancy {
            id: "t32.R13",
            summary: "reference row not in the spin group: -cos entry where -sin is required",
        },
        Discrepancy {
            id: "t32.R23",
            summary: "reference row not in the spin group: sign of one sin entry flipped",
        },
        Discrepancy {
            id: "t32.R45",
            summary: "one branch of the reference row display is garbled; the parallel branch verifies",
        },
        Discrepancy {
            id: "t41.orientation",
            summary: "rows R13, R12, H25 of the (4,1) table invert the oppositely oriented factor",
        },
        Discrepancy {
            id: "t41.H15",
            summary: "second diagonal entry printed with the wrong rapidity sign",
        },
        Discrepancy {
            id: "t41.R42",
            summary: "printed row is not in the spin group (second entry conjugated)",
        },
        Discrepancy {
            id: "t41.H35",
            summary: "off-diagonal entries printed on the k axis; the verified entries are real",
        },
        Discrepancy {
            id: "t41.R34",
            summary: "the (3,4) rotation appears in the factorization but has no reference row; the solver derives it from the linearization",
        },
        Discrepancy {
            id: "psi41.signs",
            summary: "the transcribed linearization flips the signs of the a2, alpha2, beta2, gamma2 terms relative to the commutator oracle on the cataloged basis (a conjugated quaternion convention)",
        },
        Discrepancy {
            id: "rotor.sign",
            summary: "the half-angle rotor of a hyperbolic factor carries a negative bivector coefficient (equivalently the reversed blade order), fixed by the conjugation oracle",
        },
        Discrepancy {
            id: "basis.b30",
            summary: "third entry of the (3,0) basis squares to -I as transcribed; the catalog uses the Hermitian Pauli matrix instead",
        },
        Discrepancy {
            id: "basis.b50",
            summary: "the transcribed (5,0) pentad fails the axioms (three squares and three anticommutators); the catalog doubles the (4,0) quartet and appends the graded volume element",
        },
        Discrepancy {
            id: "basis.b04",
            summary: "entries three and four of the (0,4) basis commute as transcribed; the catalog flips one diagonal sign",
        },
        Discrepancy {
            id: "basis.b06",
            summary: "fifth entry of the (0,6) basis is printed with an extra tensor factor of the wrong size; the catalog drops it",
        },
        Discrepancy {
            id: "basis.b08",
            summary: "third entry of the (0,8) basis fails five anticommutation pairs; the unique completion over the same alphabet replaces it",
        },
        Discrepancy {
            id: "basis.b70",
            summary: "the questioned (7,0) entry verifies as transcribed (no correction needed)",
        },
    ]
}
