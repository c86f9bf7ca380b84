//! Curve files: JSON documents with exact coefficients.
//!
//! ```json
//! {"field":{"d":2},"x":[[0,"1","0"],[1,"0","1"],[2,"1","0"]],"y":[[-1,"1","0"]]}
//! ```
//!
//! Each term is `[exponent, rational part, surd part]`; the coefficient is
//! `a + b sqrt(d)`. Exponents are strictly increasing and zero terms are
//! not written.

use annuli_core::curve::ParametricCurve;
use annuli_core::{AlgebraError, LaurentPoly, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failures while reading a curve file.
#[derive(Debug, Error)]
pub enum FileError {
    /// Malformed document.
    #[error("parse error at line {line}, column {column}: {msg}")]
    ParseError {
        /// 1-based line.
        line: usize,
        /// 1-based column.
        column: usize,
        /// Description.
        msg: String,
    },
    /// Coefficient outside the declared field.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    /// An explicit zero coefficient.
    #[error("zero coefficient for exponent {exponent} in {component}")]
    ZeroCoefficient {
        /// `x` or `y`.
        component: char,
        /// Offending exponent.
        exponent: i64,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Field {
    d: i64,
}

/// Serialized form of a curve.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    field: Field,
    x: Vec<(i64, String, String)>,
    y: Vec<(i64, String, String)>,
}

fn locate(text: &str, needle: &str) -> (usize, usize) {
    let Some(pos) = text.find(needle) else { return (1, 1) };
    let line = text[..pos].matches('\n').count() + 1;
    let column = pos - text[..pos].rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, column)
}

fn component(
    text: &str,
    name: char,
    terms: &[(i64, String, String)],
    d: i64,
) -> Result<LaurentPoly, FileError> {
    let mut out = Vec::with_capacity(terms.len());
    let mut last: Option<i64> = None;
    for (k, a, b) in terms {
        if last.is_some_and(|l| l >= *k) {
            let (line, column) = locate(text, &format!("\"{}\"", name));
            return Err(FileError::ParseError {
                line,
                column,
                msg: format!("exponents of {} must be strictly increasing (at {})", name, k),
            });
        }
        last = Some(*k);
        let c = Scalar::parse(a, b, d).map_err(|e| match e {
            AlgebraError::BadRational(s) => {
                let (line, column) = locate(text, &s);
                FileError::ParseError { line, column, msg: format!("malformed rational {:?}", s) }
            }
            other => FileError::FieldMismatch(other.to_string()),
        })?;
        if d == 1 && !Scalar::parse(b, "0", 1).is_ok_and(|s| s.is_zero()) {
            return Err(FileError::FieldMismatch(format!("surd part {:?} in {} over Q", b, name)));
        }
        if c.is_zero() {
            return Err(FileError::ZeroCoefficient { component: name, exponent: *k });
        }
        out.push((*k, c));
    }
    Ok(LaurentPoly::from_terms(out))
}

/// Parses a curve file.
pub fn parse_curve_file(text: &str) -> Result<ParametricCurve, FileError> {
    let doc: CurveFile = serde_json::from_str(text).map_err(|e| FileError::ParseError {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let d = doc.field.d;
    if d != 1 && !annuli_core::scalar::is_squarefree(d) {
        return Err(FileError::FieldMismatch(format!("radicand {} is not squarefree", d)));
    }
    let phi = component(text, 'x', &doc.x, d)?;
    let psi = component(text, 'y', &doc.y, d)?;
    ParametricCurve::new(phi, psi, d).map_err(|e| FileError::FieldMismatch(e.to_string()))
}

fn terms(f: &LaurentPoly) -> Vec<(i64, String, String)> {
    f.terms().map(|(k, c)| {
        let (a, b) = c.parts();
        (k, a, b)
    })
    .collect()
}

/// Canonical serialized form of a curve.
pub fn emit_curve_file(c: &ParametricCurve) -> String {
    let doc = CurveFile { field: Field { d: c.d }, x: terms(&c.phi), y: terms(&c.psi) };
    serde_json::to_string(&doc).expect("serializable")
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn curve() -> impl Strategy<Value = ParametricCurve> {
        let comp = |d: i64| {
            prop::collection::btree_map(-6i64..=6, (-9i64..=9, 1i64..=6, -4i64..=4, 1i64..=3), 1..5).prop_map(move |m| {
                LaurentPoly::from_terms(m.into_iter().map(|(k, (a, b, c, e))| {
                    let s = if d == 1 { 0 } else { c };
                    (k, Scalar::parse(&format!("{}/{}", a, b), &format!("{}/{}", s, e), d).unwrap())
                }))
            })
        };
        prop::sample::select(vec![1i64, 2, 5, -3]).prop_flat_map(move |d| {
            (comp(d), comp(d)).prop_filter_map("nonzero components", move |(x, y)| {
                ParametricCurve::new(x, y, d).ok().filter(|c| !c.phi.is_zero() && !c.psi.is_zero())
            })
        })
    }

    proptest! {
        #[test]
        fn emit_parse_round_trip(c in curve()) {
            let text = emit_curve_file(&c);
            let back = parse_curve_file(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(emit_curve_file(&back), text);
        }
    }
}
