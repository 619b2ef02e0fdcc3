//! Seifert matrices and the classical invariants computed from them.

pub mod hermitian;
pub mod library;
pub mod lt;
pub mod roots;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{CoeffDomain, IntMatrix, LaurentPoly, Matrix};
use hermitian::{inertia, GaussRat};

pub use lt::{lt_signature, LtSignature, RootAngle, RootOfUnity, SignatureProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("Seifert matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Seifert matrix must have even size, got {0}")]
    OddSize(usize),
    #[error("det(A - A^T) must be 1, got {0}")]
    NotUnimodular(BigInt),
    #[error("invalid knot document: {0}")]
    Parse(String),
}

/// A Seifert matrix `A` with `det(A - A^T) = 1`. The empty matrix is the unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    matrix: IntMatrix,
    pub name: Option<String>,
    pub crossing_number: Option<u64>,
}

/// On-disk knot description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing_number: Option<u64>,
    pub matrix: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self, SeifertError> {
        if !matrix.is_square() {
            return Err(SeifertError::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !matrix.rows().is_multiple_of(2) {
            return Err(SeifertError::OddSize(matrix.rows()));
        }
        let det = matrix.sub(&matrix.transpose()).determinant();
        if !det.is_one() {
            return Err(SeifertError::NotUnimodular(det));
        }
        Ok(SeifertMatrix { matrix, name: None, crossing_number: None })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, SeifertError> {
        if rows.is_empty() {
            return Ok(Self::unknot());
        }
        let m = IntMatrix::from_i64_rows(rows).map_err(|e| SeifertError::Parse(e.to_string()))?;
        Self::new(m)
    }

    pub fn unknot() -> Self {
        SeifertMatrix { matrix: IntMatrix::zeros(0, 0), name: Some("unknot".into()), crossing_number: Some(0) }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_crossing_number(mut self, c: u64) -> Self {
        self.crossing_number = Some(c);
        self
    }

    pub fn from_doc(doc: &KnotDoc) -> Result<Self, SeifertError> {
        let mut k = Self::from_i64_rows(&doc.matrix)?;
        k.name = doc.name.clone();
        k.crossing_number = doc.crossing_number;
        Ok(k)
    }

    pub fn to_doc(&self) -> KnotDoc {
        KnotDoc {
            name: self.name.clone(),
            crossing_number: self.crossing_number,
            matrix: self.matrix.to_i64_rows().expect("entries fit in i64"),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SeifertError> {
        let doc: KnotDoc = serde_json::from_str(text).map_err(|e| SeifertError::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Genus of the Seifert surface the matrix comes from.
    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn is_unknot_matrix(&self) -> bool {
        self.size() == 0
    }

    /// `f(t) = det(A - t A^T)` as integer coefficients, by evaluating at
    /// `t = 0..=n` and interpolating.
    pub fn alexander_determinant(&self) -> Vec<BigInt> {
        let n = self.size();
        let a = &self.matrix;
        let at = a.transpose();
        let values: Vec<BigRational> =
            (0..=n).map(|t| BigRational::from_integer(a.sub(&at.scale(&BigInt::from(t))).determinant())).collect();
        interpolate(&values)
    }

    /// Alexander polynomial in `t`, normalized so that `Δ(t^-1) = Δ(t)` and
    /// `Δ(1) = 1`.
    pub fn alexander_poly(&self) -> LaurentPoly {
        let f = self.alexander_determinant();
        let g = self.genus() as i64;
        let p = LaurentPoly::from_coeffs("t", -g, &f, CoeffDomain::Integer);
        debug_assert!(p.augmentation().is_one());
        p
    }

    /// Signature of `A + A^T`.
    pub fn signature(&self) -> i64 {
        let s = self.matrix.add(&self.matrix.transpose());
        inertia(&to_gauss(&s)).signature()
    }

    /// Arf invariant from `Δ(-1) mod 8`.
    pub fn arf(&self) -> u8 {
        arf_from_alexander(&self.alexander_poly())
    }

    /// Determinant `|Δ(-1)|`.
    pub fn determinant(&self) -> BigInt {
        let v = alexander_at_minus_one(&self.alexander_poly());
        if v < BigInt::zero() {
            -v
        } else {
            v
        }
    }

    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a} # {b}")),
            _ => None,
        };
        let crossing_number = match (self.crossing_number, other.crossing_number) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        SeifertMatrix { matrix: self.matrix.block_sum(&other.matrix, BigInt::zero()), name, crossing_number }
    }

    /// `-A^T`.
    pub fn mirror(&self) -> SeifertMatrix {
        SeifertMatrix {
            matrix: self.matrix.transpose().neg(),
            name: self.name.as_ref().map(|n| format!("mirror({n})")),
            crossing_number: self.crossing_number,
        }
    }

    /// Concordance inverse; coincides with the mirror at the level of
    /// Seifert forms.
    pub fn inverse(&self) -> SeifertMatrix {
        let mut m = self.mirror();
        m.name = self.name.as_ref().map(|n| format!("-({n})"));
        m
    }

    /// `n`-fold connected sum; negative `n` uses the inverse.
    pub fn multiple(&self, n: i64) -> SeifertMatrix {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = SeifertMatrix::unknot();
        acc.name = None;
        for _ in 0..n.unsigned_abs() {
            acc = if acc.is_unknot_matrix() { base.clone() } else { acc.connected_sum(&base) };
        }
        acc.name = self.name.as_ref().map(|s| format!("{n}*({s})"));
        acc.crossing_number = self.crossing_number.map(|c| c * n.unsigned_abs());
        acc
    }

    pub fn profile(&self) -> SignatureProfile {
        SignatureProfile::new(self)
    }
}

/// Newton interpolation through `(0, v_0), (1, v_1), ...`, returning integer
/// coefficients in increasing degree.
fn interpolate(values: &[BigRational]) -> Vec<BigInt> {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigInt::from(level);
        }
    }
    // Expand sum dd[k] * prod_{j<k} (t - j).
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, c) in dd.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * BigInt::from(k);
        }
        basis = next;
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "non-integral interpolation");
            c.to_integer()
        })
        .collect()
}

pub(crate) fn to_gauss(m: &IntMatrix) -> Matrix<GaussRat> {
    m.map(|v| Complex::new(BigRational::from_integer(v.clone()), BigRational::zero()))
}

/// `Δ(-1)` for a one-variable Laurent polynomial with integer coefficients.
pub fn alexander_at_minus_one(delta: &LaurentPoly) -> BigInt {
    let mut acc = BigInt::zero();
    for (e, c) in delta.terms() {
        let c = c.to_bigint().expect("integer coefficients");
        if e[0].rem_euclid(2) == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// Arf invariant: 0 when `Δ(-1) ≡ ±1 (mod 8)`, else 1.
pub fn arf_from_alexander(delta: &LaurentPoly) -> u8 {
    let v = alexander_at_minus_one(delta);
    let r = ((v % 8) + 8) % 8;
    if r == BigInt::from(1) || r == BigInt::from(7) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::library;

    fn delta(low: i64, c: &[i64]) -> LaurentPoly {
        let cs: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        LaurentPoly::from_coeffs("t", low, &cs, CoeffDomain::Integer)
    }

    #[test]
    fn validation() {
        assert!(matches!(SeifertMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]), Err(SeifertError::NotUnimodular(_))));
        assert!(SeifertMatrix::from_i64_rows(&[vec![-1, 1], vec![0, -1]]).is_ok());
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(SeifertMatrix::new(m), Err(SeifertError::NotSquare { .. })));
    }

    #[test]
    fn classical_examples() {
        let t = library::trefoil();
        assert_eq!(t.alexander_poly(), delta(-1, &[1, -1, 1]));
        assert_eq!(t.signature(), -2);
        assert_eq!(t.arf(), 1);
        let e = library::figure_eight();
        assert_eq!(e.alexander_poly(), delta(-1, &[-1, 3, -1]));
        assert_eq!(e.signature(), 0);
        assert_eq!(e.arf(), 1);
        let u = SeifertMatrix::unknot();
        assert!(u.alexander_poly().is_one());
        assert_eq!(u.signature(), 0);
        assert_eq!(u.arf(), 0);
    }

    #[test]
    fn sums_and_mirrors() {
        let t = library::trefoil();
        let tt = t.connected_sum(&t);
        let d = t.alexander_poly();
        assert_eq!(tt.alexander_poly(), d.mul(&d));
        assert_eq!(tt.arf(), 0);
        assert_eq!(t.mirror().signature(), 2);
        assert_eq!(SeifertMatrix::unknot().connected_sum(&t).matrix(), t.matrix());
        assert_eq!(t.multiple(-2).signature(), 4);
    }

    #[test]
    fn knot_doc_round_trip() {
        let text = r#"{"name":"3_1","crossing_number":3,"matrix":[[-1,1],[0,-1]]}"#;
        let k = SeifertMatrix::from_json(text).unwrap();
        assert_eq!(k.crossing_number, Some(3));
        assert_eq!(serde_json::to_string(&k.to_doc()).unwrap(), text);
        assert!(SeifertMatrix::from_json(r#"{"matrix":[[1]]}"#).is_err());
    }
}
