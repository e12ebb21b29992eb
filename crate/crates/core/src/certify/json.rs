//! Certificate files.
//!
//! ```json
//! {
//!   "field": "gf2",
//!   "n": 2,
//!   "levels": [
//!     { "ops": ["swap 1 2"], "v_star": ["1"], "beta_star": "1",
//!       "w_star": ["0"], "h_star": ["0"], "b_tail": [["1"]] },
//!     ...
//!   ],
//!   "base": ["1", "1"]
//! }
//! ```
//!
//! `base` is the string `"empty"` for `n = 0`. Keys are written in the order
//! above and every scalar is a canonical literal string.

use serde::{Deserialize, Serialize};

use super::{CertBase, CertLevel, Certificate};
use crate::elementary::ElementaryOp;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{Matrix, Vector};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    field: String,
    n: usize,
    levels: Vec<LevelFile>,
    base: BaseFile,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelFile {
    ops: Vec<String>,
    v_star: Vec<String>,
    beta_star: String,
    w_star: Vec<String>,
    h_star: Vec<String>,
    b_tail: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BaseFile {
    Pair([String; 2]),
    Marker(String),
}

fn literals(v: &Vector) -> Vec<String> {
    v.entries().iter().map(ToString::to_string).collect()
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

fn element(spec: FieldSpec, text: &str) -> Result<FieldElement> {
    spec.parse_element(text)
        .map_err(|e| malformed(format!("literal `{text}`: {e}")))
}

fn vector(spec: FieldSpec, items: &[String]) -> Result<Vector> {
    let entries = items.iter().map(|t| element(spec, t)).collect::<Result<_>>()?;
    Vector::new(spec, entries)
}

impl Certificate {
    /// Deterministic pretty-printed JSON.
    pub fn to_json(&self) -> String {
        let levels = self
            .levels
            .iter()
            .map(|l| LevelFile {
                ops: l.ops.iter().map(ToString::to_string).collect(),
                v_star: literals(&l.v_star),
                beta_star: l.beta_star.to_string(),
                w_star: literals(&l.w_star),
                h_star: literals(&l.h_star),
                b_tail: (0..l.b_tail.rows())
                    .map(|r| l.b_tail.row(r).iter().map(ToString::to_string).collect())
                    .collect(),
            })
            .collect();
        let base = match &self.base {
            CertBase::Empty => BaseFile::Marker("empty".into()),
            CertBase::Scalar { a, b } => BaseFile::Pair([a.to_string(), b.to_string()]),
        };
        let file = CertificateFile {
            field: self.spec.to_string(),
            n: self.n,
            levels,
            base,
        };
        let mut out = serde_json::to_string_pretty(&file).expect("certificate serializes");
        out.push('\n');
        out
    }

    /// Parses a certificate file. JSON syntax errors come back as
    /// [`Error::Parse`]; well-formed JSON with bad content as
    /// [`Error::MalformedCertificate`].
    pub fn from_json(text: &str) -> Result<Certificate> {
        let file: CertificateFile = serde_json::from_str(text).map_err(|e| {
            if e.is_syntax() || e.is_eof() {
                Error::parse(e.line(), e.column(), e.to_string())
            } else {
                malformed(e.to_string())
            }
        })?;
        let spec: FieldSpec = file
            .field
            .parse()
            .map_err(|e: Error| malformed(format!("field: {e}")))?;

        let levels = file
            .levels
            .iter()
            .map(|l| {
                let ops = l
                    .ops
                    .iter()
                    .map(|op| ElementaryOp::parse(spec, op).map_err(|e| malformed(e.to_string())))
                    .collect::<Result<_>>()?;
                let cols = l.b_tail.first().map_or(0, Vec::len);
                let rows = l
                    .b_tail
                    .iter()
                    .map(|row| {
                        if row.len() != cols {
                            return Err(malformed("b_tail rows have different lengths"));
                        }
                        row.iter().map(|t| element(spec, t)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CertLevel {
                    ops,
                    v_star: vector(spec, &l.v_star)?,
                    beta_star: element(spec, &l.beta_star)?,
                    w_star: vector(spec, &l.w_star)?,
                    h_star: vector(spec, &l.h_star)?,
                    b_tail: Matrix::from_rows(spec, rows)?,
                })
            })
            .collect::<Result<_>>()?;

        let base = match &file.base {
            BaseFile::Marker(m) if m == "empty" => CertBase::Empty,
            BaseFile::Marker(m) => return Err(malformed(format!("unknown base marker `{m}`"))),
            BaseFile::Pair([a, b]) => CertBase::Scalar {
                a: element(spec, a)?,
                b: element(spec, b)?,
            },
        };
        Ok(Certificate {
            spec,
            n: file.n,
            levels,
            base,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{left_inverse, prove_two_sided, verify_certificate, Inversion};
    use super::*;

    #[test]
    fn layout_is_fixed() {
        let spec = FieldSpec::prime(2).unwrap();
        let a = Matrix::from_i64(spec, &[[0, 1], [1, 0]]);
        let cert = prove_two_sided(&a, &a).unwrap();
        let expected = r#"{
  "field": "gf2",
  "n": 2,
  "levels": [
    {
      "ops": [
        "swap 1 2"
      ],
      "v_star": [
        "0"
      ],
      "beta_star": "1",
      "w_star": [
        "0"
      ],
      "h_star": [
        "0"
      ],
      "b_tail": [
        [
          "1"
        ]
      ]
    },
    {
      "ops": [],
      "v_star": [],
      "beta_star": "1",
      "w_star": [],
      "h_star": [],
      "b_tail": []
    }
  ],
  "base": [
    "1",
    "1"
  ]
}
"#;
        assert_eq!(cert.to_json(), expected);
    }

    #[test]
    fn round_trip_over_rationals() {
        let spec = FieldSpec::rational();
        let a = Matrix::from_i64(spec, &[[2, 1, 0], [0, 3, 1], [5, 0, 7]]);
        let Inversion::Inverse(b) = left_inverse(&a).unwrap() else { panic!() };
        let cert = prove_two_sided(&a, &b).unwrap();
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        assert!(verify_certificate(&back, &a, &b).unwrap());
    }

    #[test]
    fn empty_base_marker() {
        let e = Matrix::identity(FieldSpec::rational(), 0);
        let cert = prove_two_sided(&e, &e).unwrap();
        let text = cert.to_json();
        assert!(text.contains(r#""base": "empty""#));
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);
    }

    #[test]
    fn bad_files() {
        assert!(matches!(Certificate::from_json("{"), Err(Error::Parse { .. })));
        let bad_field = r#"{"field":"gf4","n":0,"levels":[],"base":"empty"}"#;
        assert!(matches!(Certificate::from_json(bad_field), Err(Error::MalformedCertificate(_))));
        let bad_base = r#"{"field":"gf2","n":0,"levels":[],"base":"none"}"#;
        assert!(matches!(Certificate::from_json(bad_base), Err(Error::MalformedCertificate(_))));
        let extra = r#"{"field":"gf2","n":0,"levels":[],"base":"empty","x":1}"#;
        assert!(matches!(Certificate::from_json(extra), Err(Error::MalformedCertificate(_))));
        let bad_op = r#"{"field":"gf2","n":1,"levels":[{"ops":["swap 1 1"],"v_star":[],"beta_star":"1","w_star":[],"h_star":[],"b_tail":[]}],"base":["1","1"]}"#;
        assert!(matches!(Certificate::from_json(bad_op), Err(Error::MalformedCertificate(_))));
    }
}
