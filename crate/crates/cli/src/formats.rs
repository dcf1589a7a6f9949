//! Wire encodings shared by reports and replay output.

use meanforge_core::ComplexMatrix;
use serde::{Serialize, Serializer};

/// A real number that serializes as a JSON number when finite and as the
/// string `"inf"`, `"-inf"` or `"nan"` otherwise (log-majorization slacks
/// are legitimately infinite at zero singular values).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_finite() {
            s.serialize_f64(x)
        } else {
            s.serialize_str(real_text(x).as_str())
        }
    }
}

/// Shortest round-trip text for `x` (what JSON and CSV output contain).
pub fn real_text(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        // serde_json and Display both print the shortest representation
        // that parses back to the same f64.
        format!("{x:?}")
    }
}

pub fn reals(v: &[f64]) -> Vec<Real> {
    v.iter().copied().map(Real).collect()
}

/// Rows of `[re, im]` pairs.
pub fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<[Real; 2]>> {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| [Real(m[(i, j)].re), Real(m[(i, j)].im)]).collect()).collect()
}
