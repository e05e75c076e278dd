//! JSON documents describing a power series over `k[x1..xn]`.
//!
//! ```json
//! {"ring": {"vars": ["u", "v"], "field": "Q", "order": "grevlex"},
//!  "precision": 16,
//!  "terms": [{"a": "u", "j": 0, "unit": "one"},
//!            {"a": "v", "j": 1, "unit": "geom"}]}
//! ```
//!
//! A unit is `"one"`, `"geom"` (`1/(1-X)`), or `{"coeffs": [..], "den": [..]}` with
//! coefficient lists in `X` from `X^0` (`den` defaults to `1`). Instead of `terms`, a
//! document may give `"coeffs"` (a polynomial in `X`), optionally with `"recurrence"`
//! rows `r_i0..r_in` expressing each later coefficient through the first `n + 1`.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{Field, MonomialOrder, Polynomial, RingSpec};
use crate::dmcheck::DmReport;
use crate::series::{unit_tail_rewrite, TruncatedSeries, UnitSeries, UnitTailSeries, UnitTerm, DEFAULT_PRECISION};

use super::parse_poly;

/// A problem in a document, located by its field path (`terms[1].unit.coeffs[0]`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct DocError {
    pub path: String,
    pub message: String,
}

impl DocError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        let path = path.into();
        DocError {
            path: if path.is_empty() || path == "." { "document".into() } else { path },
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub vars: Vec<String>,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum UnitDoc {
    Named(String),
    Ratio {
        coeffs: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        den: Option<Vec<String>>,
    },
}

impl<'de> Deserialize<'de> for UnitDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Ratio {
            coeffs: Vec<String>,
            #[serde(default)]
            den: Option<Vec<String>>,
        }
        match Value::deserialize(d)? {
            Value::String(s) if s == "one" || s == "geom" => Ok(UnitDoc::Named(s)),
            Value::String(s) => Err(de::Error::custom(format!("unknown unit {s:?}, expected \"one\" or \"geom\""))),
            v @ Value::Object(_) => {
                let r = Ratio::deserialize(v).map_err(de::Error::custom)?;
                Ok(UnitDoc::Ratio { coeffs: r.coeffs, den: r.den })
            }
            _ => Err(de::Error::custom("a unit is \"one\", \"geom\" or {\"coeffs\": [...]}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub a: String,
    pub j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub ring: RingDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<Vec<Vec<String>>>,
}

/// `"Q"` or `"Fp:<p>"`.
pub fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "Q" => Ok(Field::Rational),
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .ok_or_else(|| format!("unknown field {s:?}, expected \"Q\" or \"Fp:<p>\""))?;
            let p: u64 = p.parse().map_err(|_| format!("bad characteristic {p:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

pub fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    match s {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => Err(format!("unknown order {s:?}, expected \"grevlex\" or \"lex\"")),
    }
}

impl RingDoc {
    pub fn build(&self) -> Result<Arc<RingSpec>, DocError> {
        let field = parse_field(&self.field).map_err(|m| DocError::new("ring.field", m))?;
        let order = match &self.order {
            Some(o) => parse_order(o).map_err(|m| DocError::new("ring.order", m))?,
            None => MonomialOrder::default(),
        };
        RingSpec::new(self.vars.clone(), field, order).map_err(|e| DocError::new("ring.vars", e))
    }

    pub fn from_ring(ring: &RingSpec) -> Self {
        RingDoc {
            vars: ring.vars().to_vec(),
            field: ring.field().to_string(),
            order: Some(ring.order().name().to_string()),
        }
    }
}

fn poly_at(src: &str, ring: &Arc<RingSpec>, path: &str) -> Result<Polynomial, DocError> {
    parse_poly(src, ring).map_err(|e| DocError::new(path, e))
}

fn polys_at(srcs: &[String], ring: &Arc<RingSpec>, path: &str) -> Result<Vec<Polynomial>, DocError> {
    srcs.iter()
        .enumerate()
        .map(|(i, s)| poly_at(s, ring, &format!("{path}[{i}]")))
        .collect()
}

impl UnitDoc {
    fn build(&self, ring: &Arc<RingSpec>, path: &str) -> Result<UnitSeries, DocError> {
        match self {
            UnitDoc::Named(n) if n == "one" => Ok(UnitSeries::one(ring)),
            UnitDoc::Named(n) if n == "geom" => Ok(UnitSeries::geometric(ring)),
            UnitDoc::Named(n) => Err(DocError::new(path, format!("unknown unit {n:?}"))),
            UnitDoc::Ratio { coeffs, den } => {
                let num = polys_at(coeffs, ring, &format!("{path}.coeffs"))?;
                let den = match den {
                    Some(d) => polys_at(d, ring, &format!("{path}.den"))?,
                    None => vec![Polynomial::one(ring)],
                };
                let den_bad = den.first().is_none_or(|c| c.as_scalar().is_none());
                UnitSeries::ratio(ring, num, den).map_err(|e| {
                    let field = if den_bad { "den" } else { "coeffs" };
                    DocError::new(format!("{path}.{field}[0]"), e)
                })
            }
        }
    }

    /// `None` for units only known as truncations.
    pub fn from_unit(u: &UnitSeries) -> Option<Self> {
        if u.is_one() {
            return Some(UnitDoc::Named("one".into()));
        }
        if *u == UnitSeries::geometric(u.ring()) {
            return Some(UnitDoc::Named("geom".into()));
        }
        let (num, den) = u.as_ratio()?;
        let strs = |v: &[Polynomial]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let den = (den.len() > 1 || den[0].as_scalar().is_none_or(|c| !c.is_one())).then(|| strs(den));
        Some(UnitDoc::Ratio { coeffs: strs(num), den })
    }
}

impl SeriesDoc {
    pub fn build(&self) -> Result<UnitTailSeries, DocError> {
        let ring = self.ring.build()?;
        let precision = self.precision.unwrap_or(DEFAULT_PRECISION);
        match (&self.terms, &self.coeffs) {
            (Some(_), Some(_)) => Err(DocError::new("coeffs", "give either \"terms\" or \"coeffs\", not both")),
            (None, None) => Err(DocError::new("terms", "missing: give \"terms\" or \"coeffs\"")),
            (Some(terms), None) => {
                if self.recurrence.is_some() {
                    return Err(DocError::new("recurrence", "only allowed together with \"coeffs\""));
                }
                let mut out = Vec::with_capacity(terms.len());
                for (i, t) in terms.iter().enumerate() {
                    let path = format!("terms[{i}]");
                    let a = poly_at(&t.a, &ring, &format!("{path}.a"))?;
                    let unit = match &t.unit {
                        Some(u) => u.build(&ring, &format!("{path}.unit"))?,
                        None => UnitSeries::one(&ring),
                    };
                    if t.j > precision {
                        return Err(DocError::new(
                            format!("{path}.j"),
                            format!("exponent {} exceeds precision {precision}", t.j),
                        ));
                    }
                    if out.iter().any(|u: &UnitTerm| u.j == t.j) {
                        return Err(DocError::new(format!("{path}.j"), format!("exponent {} repeated", t.j)));
                    }
                    out.push(UnitTerm { a, j: t.j, unit });
                }
                UnitTailSeries::new(&ring, precision, out).map_err(|e| DocError::new("terms", e))
            }
            (None, Some(coeffs)) => {
                let cs = polys_at(coeffs, &ring, "coeffs")?;
                match &self.recurrence {
                    None => Ok(UnitTailSeries::from_polynomial(&ring, cs)
                        .map_err(|e| DocError::new("coeffs", e))?
                        .with_precision(precision)),
                    Some(rows) => {
                        let rows = rows
                            .iter()
                            .enumerate()
                            .map(|(i, r)| polys_at(r, &ring, &format!("recurrence[{i}]")))
                            .collect::<Result<Vec<_>, _>>()?;
                        let t = TruncatedSeries::new(&ring, cs).map_err(|e| DocError::new("coeffs", e))?;
                        unit_tail_rewrite(&t, Some(&rows)).map_err(|e| DocError::new("recurrence", e))
                    }
                }
            }
        }
    }

    /// Document for `f`; `None` if some unit is only known as a truncation.
    pub fn from_series(f: &UnitTailSeries) -> Option<Self> {
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let unit = UnitDoc::from_unit(&t.unit)?;
                Some(TermDoc {
                    a: t.a.to_string(),
                    j: t.j,
                    unit: (unit != UnitDoc::Named("one".into())).then_some(unit),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SeriesDoc {
            ring: RingDoc::from_ring(f.ring()),
            precision: Some(f.precision()),
            terms: Some(terms),
            coeffs: None,
            recurrence: None,
        })
    }
}

fn from_json<T: serde::de::DeserializeOwned>(src: &str) -> Result<T, DocError> {
    let de = &mut serde_json::Deserializer::from_str(src);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        DocError::new(path, e.into_inner())
    })
}

/// Parses and validates a series document.
pub fn load_series(src: &str) -> Result<UnitTailSeries, DocError> {
    from_json::<SeriesDoc>(src)?.build()
}

pub fn dump_series(f: &UnitTailSeries) -> Option<String> {
    SeriesDoc::from_series(f).map(|d| serde_json::to_string_pretty(&d).expect("plain data"))
}

/// Pretty JSON, stable field order, no timings: equal reports give equal bytes.
pub fn dump_report(r: &DmReport) -> String {
    serde_json::to_string_pretty(r).expect("plain data")
}

pub fn read_report(src: &str) -> Result<DmReport, DocError> {
    from_json(src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmcheck::{dm_check, Verdict};

    const RUSH_G: &str = r#"{"ring": {"vars": ["u", "v"], "field": "Q"},
        "terms": [{"a": "u", "j": 0, "unit": "one"}, {"a": "v", "j": 1, "unit": "geom"}]}"#;

    fn err(src: &str) -> DocError {
        load_series(src).unwrap_err()
    }

    #[test]
    fn rush_document() {
        let g = load_series(RUSH_G).unwrap();
        assert_eq!(g.precision(), 16);
        let ring = g.ring().clone();
        let expected = UnitTailSeries::new(
            &ring,
            16,
            vec![
                UnitTerm { a: parse_poly("u", &ring).unwrap(), j: 0, unit: UnitSeries::one(&ring) },
                UnitTerm { a: parse_poly("v", &ring).unwrap(), j: 1, unit: UnitSeries::geometric(&ring) },
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
        let again = load_series(&dump_series(&g).unwrap()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn other_forms() {
        let f = load_series(r#"{"ring": {"vars": ["u", "v"]}, "coeffs": ["v", "1"]}"#).unwrap();
        assert_eq!(f.to_string(), "v + X");
        let t = load_series(
            r#"{"ring": {"vars": ["u", "v"]}, "coeffs": ["u", "v", "u + v", "2*u*v"],
                "recurrence": [["1", "1"], ["v", "u"]]}"#,
        )
        .unwrap();
        assert_eq!(t.pdeg_upper_bound(), 1);
        assert_eq!(t.known_precision(), Some(3));
        let fp = load_series(
            r#"{"ring": {"vars": ["x"], "field": "Fp:7", "order": "lex"}, "precision": 4,
                "terms": [{"a": "8*x", "j": 2, "unit": {"coeffs": ["1"], "den": ["1", "x"]}}]}"#,
        )
        .unwrap();
        assert_eq!(fp.to_string(), "x*X^2*[(1)/(1 + x*X)]");
        assert_eq!(load_series(&dump_series(&fp).unwrap()).unwrap(), fp);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let e = err(r#"{"ring": {"vars": ["u"]}, "terms": [{"a": "u", "j": 0, "unit": {"coeffs": ["u", "1"]}}]}"#);
        assert_eq!(e.path, "terms[0].unit.coeffs[0]");
        assert!(e.message.contains("nonzero scalar"), "{e}");
        let e = err(r#"{"ring": {"vars": ["u"]}, "terms": [{"a": "u", "j": "zero"}]}"#);
        assert_eq!(e.path, "terms[0].j");
        let e = err(r#"{"ring": {"vars": ["u"]}, "terms": [{"a": "u", "j": 0, "unit": "twice"}]}"#);
        assert_eq!(e.path, "terms[0].unit");
        let e = err(r#"{"ring": {"vars": ["u"]}, "terms": [{"a": "u +* 1", "j": 0}]}"#);
        assert_eq!(e.path, "terms[0].a");
        assert!(e.message.starts_with("1:4"), "{e}");
        assert_eq!(err(r#"{"ring": {"vars": ["u", "X"]}, "terms": []}"#).path, "ring.vars");
        assert_eq!(err(r#"{"ring": {"vars": ["u"], "field": "Fp:8"}, "terms": []}"#).path, "ring.field");
        assert_eq!(err(r#"{"ring": {"vars": ["u"]}, "terms": [], "extra": 1}"#).path, "extra");
        assert_eq!(err(r#"{"ring": {"vars": ["u"]}}"#).path, "terms");
        let e = err(r#"{"ring": {"vars": ["u"]}, "terms": [{"a": "u", "j": 1}, {"a": "u", "j": 1}]}"#);
        assert_eq!(e.path, "terms[1].j");
        let e = err(r#"{"ring": {"vars": ["u"]}, "coeffs": ["u", "u"], "recurrence": [["2"]]}"#);
        assert_eq!(e.path, "recurrence");
        assert!(err("[1, 2").message.contains("expected"), "{}", err("[1, 2"));
    }

    #[test]
    fn report_round_trip() {
        let f = load_series(r#"{"ring": {"vars": ["u", "v"]}, "coeffs": ["v", "1"]}"#).unwrap();
        let g = load_series(RUSH_G).unwrap();
        let mut r = dm_check(&f, &g, 2, 16).unwrap();
        r.seed = Some(42);
        r.notes.push("note".into());
        let text = dump_report(&r);
        assert!(text.contains("\"verdict\": \"verified\""));
        assert!(text.contains("\"schema\": \"dm-report/1\""));
        assert_eq!(read_report(&text).unwrap(), r);
        assert_eq!(dump_report(&read_report(&text).unwrap()), text);
        let bad = text.replace("\"verified\"", "\"maybe\"");
        assert_eq!(read_report(&bad).unwrap_err().path, "verdict");
        assert_eq!(r.verdict, Verdict::Verified);
    }
}
