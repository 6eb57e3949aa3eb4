//! JSON exchange format for structure constants and deterministic JSON
//! emission.
//!
//! An algebra is written as
//! `{"dim": n, "tol": t, "labels": [...], "brackets": [{"i": i, "j": j, "coeffs": [[re, im], ...]}]}`
//! listing only `i < j` brackets; the rest follows by antisymmetry. Complex
//! numbers are `[re, im]` everywhere.

use std::io;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, DEFAULT_TOL};
use crate::linalg::{C64, ZERO};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
}

impl AlgebraDoc {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coeffs: Vec<C64> = (0..n).map(|k| l.constant(i, j, k)).collect();
                if coeffs.iter().any(|&z| z != ZERO) {
                    brackets.push(BracketDoc { i, j, coeffs });
                }
            }
        }
        Self { dim: n, tol: Some(l.tol()), labels: Some(l.labels().to_vec()), brackets }
    }

    pub fn into_algebra(self) -> Result<LieAlgebra> {
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        let brackets: Vec<_> = self.brackets.into_iter().map(|b| (b.i, b.j, b.coeffs)).collect();
        LieAlgebra::from_brackets(self.dim, &brackets, self.labels, tol)
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraDoc::from_algebra(self).serialize(s)
    }
}

/// Parse and validate an algebra document.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    doc.into_algebra()
}

/// Formatter that prints every float with 17 significant digits in
/// scientific notation, so equal values always produce equal bytes.
struct FixedFloat<F>(F);

impl<F: Formatter> Formatter for FixedFloat<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serialize with fixed float formatting; key order follows declaration order.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T, pretty: bool) -> String {
    let mut buf = Vec::new();
    let result = if pretty {
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloat(PrettyFormatter::new()));
        value.serialize(&mut ser)
    } else {
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloat(CompactFormatter));
        value.serialize(&mut ser)
    };
    result.expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_swanson() {
        let l = catalog::swanson(0.3).unwrap();
        let text = to_json_string(&l, false);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back.constants(), l.constants());
        assert_eq!(back.labels(), l.labels());
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(to_json_string(&[0.1f64, -2.0], false), "[1.0000000000000001e-1,-2.0000000000000000e0]");
        assert_eq!(to_json_string(&f64::NAN, false), "null");
    }

    #[test]
    fn reversed_indices_rejected() {
        let text = r#"{"dim": 3, "brackets": [{"i": 1, "j": 0, "coeffs": [[0,0],[0,0],[1,0]]}]}"#;
        assert_eq!(parse_algebra(text).unwrap_err().code(), "INVALID_INPUT");
    }

    #[test]
    fn jacobi_violation_detected() {
        // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 fails Jacobi.
        let text = r#"{"dim": 3, "brackets": [
            {"i": 0, "j": 1, "coeffs": [[0,0],[0,0],[1,0]]},
            {"i": 1, "j": 2, "coeffs": [[1,0],[0,0],[0,0]]},
            {"i": 0, "j": 2, "coeffs": [[1,0],[0,0],[0,0]]}]}"#;
        assert_eq!(parse_algebra(text).unwrap_err().code(), "JACOBI_VIOLATION");
    }

    #[test]
    fn malformed_json_is_invalid_input() {
        assert_eq!(parse_algebra("{").unwrap_err().code(), "INVALID_INPUT");
        assert_eq!(parse_algebra(r#"{"dim": 2, "extra": 1}"#).unwrap_err().code(), "INVALID_INPUT");
    }
}
