//! Report serialization. Every float is rendered as a 17-significant-digit
//! decimal string (round-trip exact for doubles), field order is fixed by
//! the struct definitions, and repeated runs of the same job produce
//! byte-identical output.

use serde::Serialize;
use spincover_core::blades::Multivector;
use spincover_core::covering::SpinElement;
use spincover_core::mat::{Mat, QMat};

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn real_matrix(m: &Mat<f64>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_f64(m[(i, j)])).collect())
        .collect()
}

#[derive(Serialize)]
pub struct QuatEntry {
    pub w: String,
    pub x: String,
    pub y: String,
    pub z: String,
}

pub fn quat_matrix(m: &QMat) -> Vec<Vec<QuatEntry>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let q = m[(i, j)];
                    QuatEntry {
                        w: fmt_f64(q.w),
                        x: fmt_f64(q.x),
                        y: fmt_f64(q.y),
                        z: fmt_f64(q.z),
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Serialize)]
#[serde(tag = "kind")]
pub enum SpinElementJson {
    #[serde(rename = "sl2")]
    Sl2 { matrix: Vec<Vec<String>> },
    #[serde(rename = "sl2_pair")]
    Sl2Pair {
        first: Vec<Vec<String>>,
        second: Vec<Vec<String>>,
    },
    #[serde(rename = "spin32")]
    Spin32 { matrix: Vec<Vec<String>> },
    #[serde(rename = "quaternion2")]
    Quat2 { matrix: Vec<Vec<QuatEntry>> },
}

pub fn spin_element(el: &SpinElement) -> SpinElementJson {
    match el {
        SpinElement::S21(y) => SpinElementJson::Sl2 {
            matrix: real_matrix(y),
        },
        SpinElement::S22(a, b) => SpinElementJson::Sl2Pair {
            first: real_matrix(a),
            second: real_matrix(b),
        },
        SpinElement::S32(y) => SpinElementJson::Spin32 {
            matrix: real_matrix(y),
        },
        SpinElement::S41(y) => SpinElementJson::Quat2 {
            matrix: quat_matrix(y),
        },
    }
}

#[derive(Serialize)]
pub struct BladeTerm {
    pub indices: Vec<usize>,
    pub coeff: String,
}

pub fn multivector(mv: &Multivector<f64>) -> Vec<BladeTerm> {
    let n = mv.signature().n();
    let mut out = Vec::new();
    for (mask, c) in mv.coeffs().iter().enumerate() {
        if c.abs() <= 1e-15 {
            continue;
        }
        let indices: Vec<usize> = (0..n).filter(|k| (mask >> k) & 1 == 1).map(|k| k + 1).collect();
        out.push(BladeTerm {
            indices,
            coeff: fmt_f64(*c),
        });
    }
    out
}

#[derive(Serialize)]
pub struct FactorJson {
    pub kind: &'static str,
    pub i: usize,
    pub j: usize,
    pub parameter: String,
}

pub fn factors(fs: &[spincover_core::GivensFactor]) -> Vec<FactorJson> {
    fs.iter()
        .map(|f| FactorJson {
            kind: match f.kind {
                spincover_core::GivensKind::Standard => "standard",
                spincover_core::GivensKind::Hyperbolic => "hyperbolic",
            },
            i: f.i,
            j: f.j,
            parameter: fmt_f64(f.param),
        })
        .collect()
}
