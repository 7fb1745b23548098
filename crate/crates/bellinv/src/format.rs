//! JSON and CSV encodings.
//!
//! Rationals are strings in lowest terms (`"-3/2"`, `"4"`). Objects are
//! written with sorted keys and polynomial terms in canonical order, so equal
//! values always serialize to identical bytes.

use std::collections::BTreeMap;

use bellinv_core::lambda::{FTable, LambdaTable};
use bellinv_core::problem::Term;
use bellinv_core::{Check, LaurentEntry, Monomial, MultiPoly, ProblemSpec, Rational, SequencePrefix, Series, UniPoly};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{field}: {source}")]
    Rational { field: String, source: bellinv_core::Error },

    #[error("invalid spec: {0}")]
    Spec(bellinv_core::Error),

    #[error("{0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, FormatError>;

pub fn parse_rational(text: &str, field: impl Into<String>) -> Result<Rational> {
    text.parse().map_err(|source| FormatError::Rational {
        field: field.into(),
        source,
    })
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// `{"terms": [{"coef": "2", "exps": {"1": 1, "3": 1}}, ...], "text": "2x1x3 + x2^2"}`
pub fn multipoly_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let exps: Map<String, Value> = m.exps().iter().map(|&(v, e)| (v.to_string(), json!(e))).collect();
            json!({ "coef": c.to_string(), "exps": exps })
        })
        .collect();
    json!({ "terms": terms, "text": p.to_string() })
}

#[derive(Deserialize)]
struct TermIn {
    coef: String,
    exps: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
struct PolyIn {
    terms: Vec<TermIn>,
}

/// Reads the `terms` list; `text` is informational and ignored.
pub fn multipoly_from_json(v: &Value) -> Result<MultiPoly> {
    let parsed: PolyIn = serde_json::from_value(v.clone())?;
    let mut out = MultiPoly::zero();
    for (i, t) in parsed.terms.into_iter().enumerate() {
        let coef = parse_rational(&t.coef, format!("terms[{i}].coef"))?;
        let mut pairs = Vec::with_capacity(t.exps.len());
        for (var, e) in t.exps {
            let idx: u32 = var
                .parse()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| FormatError::Shape(format!("terms[{i}]: bad variable index {var:?}")))?;
            pairs.push((idx, e));
        }
        out.add_term(Monomial::from_pairs(pairs), &coef);
    }
    Ok(out)
}

/// Ascending coefficient list.
pub fn unipoly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat).collect())
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    let coeffs: Vec<String> = serde_json::from_value(v.clone())?;
    let coeffs = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational(c, format!("coefficient {i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::from_coeffs(coeffs))
}

pub fn laurent_json(e: &LaurentEntry) -> Value {
    json!({ "num": multipoly_json(e.num()), "den_exp": e.den_exp(), "text": e.to_string() })
}

pub fn series_json(s: &Series<Rational>) -> Value {
    json!({ "order": s.order(), "coeffs": s.coeffs().iter().map(rat).collect::<Vec<_>>() })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecTerm {
    a: String,
    q: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    p: String,
    terms: Vec<SpecTerm>,
}

/// `{"p": "1/2", "terms": [{"a": "1", "q": "2"}, ...]}`
pub fn spec_json(spec: &ProblemSpec) -> Value {
    let terms: Vec<Value> = spec
        .terms()
        .iter()
        .map(|t| json!({ "a": t.a.to_string(), "q": t.q.to_string() }))
        .collect();
    json!({ "p": spec.p().to_string(), "terms": terms })
}

pub fn spec_from_json(v: &Value) -> Result<ProblemSpec> {
    let file: SpecFile = serde_json::from_value(v.clone())?;
    let p = parse_rational(&file.p, "p")?;
    let terms = file
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            Ok(Term {
                a: parse_rational(&t.a, format!("terms[{i}].a"))?,
                q: parse_rational(&t.q, format!("terms[{i}].q"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ProblemSpec::new(p, terms).map_err(FormatError::Spec)
}

/// Which transform produced a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub transform: String,
    pub direction: String,
}

#[derive(Deserialize)]
struct SequenceIn {
    values: Vec<String>,
    #[serde(default)]
    #[allow(dead_code)]
    provenance: Option<Provenance>,
}

/// `{"values": ["1", "-3/2", ...]}`, plus `provenance` when given.
pub fn sequence_json(seq: &SequencePrefix, provenance: Option<&Provenance>) -> Value {
    let mut obj = Map::new();
    obj.insert("values".into(), Value::Array(seq.iter().map(rat).collect()));
    if let Some(p) = provenance {
        obj.insert("provenance".into(), serde_json::to_value(p).expect("plain struct"));
    }
    Value::Object(obj)
}

pub fn sequence_from_json(v: &Value) -> Result<SequencePrefix> {
    let parsed: SequenceIn = serde_json::from_value(v.clone())?;
    let values = parsed
        .values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s, format!("values[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SequencePrefix::new(values))
}

/// `{"kind": "lambda", "variable": "u = p*s", "spec": ..., "polys": [[...], ...]}`
/// with `polys[n]` = `lambda_n`.
pub fn lambda_table_json(t: &LambdaTable) -> Value {
    json!({
        "kind": "lambda",
        "variable": "u = p*s",
        "spec": spec_json(t.spec()),
        "polys": t.polys().iter().map(unipoly_json).collect::<Vec<_>>(),
    })
}

/// Same shape as [`lambda_table_json`] with `polys[i]` = `f_{i+1}`.
pub fn f_table_json(t: &FTable) -> Value {
    json!({
        "kind": "f",
        "variable": "u = p*s",
        "spec": spec_json(t.spec()),
        "polys": t.polys().iter().map(unipoly_json).collect::<Vec<_>>(),
    })
}

pub fn check_json(c: &Check) -> Value {
    json!({
        "identity": c.identity,
        "params": c.params,
        "n": c.n,
        "m": c.m,
        "status": c.status.to_string(),
        "witness": c.witness,
        "note": c.note,
    })
}

pub fn report_json(cases: &[Check], seed: u64, order: usize, suite: &str) -> Value {
    use bellinv_core::report::count;
    use bellinv_core::Status;
    json!({
        "suite": suite,
        "order": order,
        "seed": seed,
        "version": env!("CARGO_PKG_VERSION"),
        "summary": {
            "pass": count(cases, Status::Pass),
            "fail": count(cases, Status::Fail),
            "skipped_pole": count(cases, Status::SkippedPole),
        },
        "cases": cases.iter().map(check_json).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

/// CSV with a header row.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn check_rows(cases: &[Check]) -> Vec<Vec<String>> {
    cases
        .iter()
        .map(|c| {
            vec![
                c.identity.clone(),
                c.params.clone(),
                c.n.to_string(),
                c.m.map(|m| m.to_string()).unwrap_or_default(),
                c.status.to_string(),
                c.witness.clone().unwrap_or_default(),
                c.note.clone().unwrap_or_default(),
            ]
        })
        .collect()
}

pub const CHECK_HEADER: [&str; 7] = ["identity", "params", "n", "m", "status", "witness", "note"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipoly_round_trip_is_a_fixed_point() {
        let x = MultiPoly::var;
        let p = (x(1) * x(3)).scale(&Rational::new(-2, 3)) + x(2).pow(2) + MultiPoly::constant(Rational::from(5));
        let v = multipoly_json(&p);
        let back = multipoly_from_json(&v).unwrap();
        assert_eq!(back, p);
        assert_eq!(to_text(&multipoly_json(&back)), to_text(&v));
    }

    #[test]
    fn keys_are_sorted() {
        let text = to_text(&multipoly_json(&MultiPoly::var(2)));
        assert!(text.find("\"terms\"").unwrap() < text.find("\"text\"").unwrap());
        assert!(text.find("\"coef\"").unwrap() < text.find("\"exps\"").unwrap());
    }

    #[test]
    fn spec_validation_surfaces() {
        let v: Value =
            serde_json::from_str(r#"{"p": "1", "terms": [{"a": "1", "q": "2"}, {"a": "1", "q": "3"}]}"#).unwrap();
        let err = spec_from_json(&v).unwrap_err();
        assert!(err.to_string().contains("c0 != 0"), "{err}");
        let v: Value =
            serde_json::from_str(r#"{"p": "1/2", "terms": [{"a": "1", "q": "2"}, {"a": "-1", "q": "3"}]}"#).unwrap();
        let s = spec_from_json(&v).unwrap();
        assert_eq!(spec_json(&s), v);
    }

    #[test]
    fn bad_rationals_name_their_position() {
        let v: Value = serde_json::from_str(r#"{"values": ["1", "2.5"]}"#).unwrap();
        let err = sequence_from_json(&v).unwrap_err();
        assert!(err.to_string().starts_with("values[1]"), "{err}");
    }

    #[test]
    fn csv_quotes_fields() {
        let out = to_csv(&["a", "b"], &[vec!["x, y".into(), "1".into()]]);
        assert_eq!(out, "a,b\n\"x, y\",1\n");
    }
}
