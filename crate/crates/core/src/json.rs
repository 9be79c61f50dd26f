//! JSON interchange. Every number that can be non-integral is written as a
//! `"num/den"` string; terms are listed in graded-lex order.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use crate::certify::Certificate;
use crate::error::{Error, Result};
use crate::lp::LpResult;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};
use crate::search::{SearchReport, SupportSolution};
use crate::system::{Column, LinearSystem};

fn fraction(value: &Scalar) -> Value {
    Value::String(scalar::to_fraction_string(value))
}

fn fractions(values: &[Scalar]) -> Value {
    Value::Array(values.iter().map(fraction).collect())
}

fn term_value(m: &Monomial, c: &Scalar) -> Value {
    json!({ "exp": m.exponents(), "coef": fraction(c) })
}

pub fn polynomial_to_value(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p.terms().map(|(m, c)| term_value(m, c)).collect();
    json!({ "nvars": p.nvars(), "terms": terms })
}

pub fn polynomial_from_value(value: &Value) -> Result<Polynomial> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::format("$", "expected an object"))?;
    let nvars = obj
        .get("nvars")
        .ok_or_else(|| Error::format("nvars", "missing"))?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::format("nvars", "expected a positive integer"))? as usize;
    let terms = obj
        .get("terms")
        .ok_or_else(|| Error::format("terms", "missing"))?
        .as_array()
        .ok_or_else(|| Error::format("terms", "expected an array"))?;

    let mut seen = BTreeSet::new();
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, term) in terms.iter().enumerate() {
        let here = |field: &str| format!("terms[{i}].{field}");
        let term = term
            .as_object()
            .ok_or_else(|| Error::format(format!("terms[{i}]"), "expected an object"))?;
        let exp = term
            .get("exp")
            .ok_or_else(|| Error::format(here("exp"), "missing"))?
            .as_array()
            .ok_or_else(|| Error::format(here("exp"), "expected an array"))?;
        if exp.len() != nvars {
            return Err(Error::format(
                here("exp"),
                format!("expected {nvars} exponents, got {}", exp.len()),
            ));
        }
        let exponents = exp
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::format(here("exp"), "expected nonnegative integers"))?;
        let coef = term
            .get("coef")
            .ok_or_else(|| Error::format(here("coef"), "missing"))?
            .as_str()
            .ok_or_else(|| Error::format(here("coef"), "expected a fraction string"))?;
        let coef = scalar::parse_fraction(coef).map_err(|e| match e {
            Error::Format { message, .. } => Error::format(here("coef"), message),
            other => other,
        })?;
        let monomial = Monomial::new(exponents);
        if !seen.insert(monomial.clone()) {
            return Err(Error::format(here("exp"), "repeated exponent vector"));
        }
        parsed.push((monomial, coef));
    }
    Polynomial::from_terms(nvars, parsed)
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::format("$", e.to_string()))?;
    polynomial_from_value(&value)
}

pub fn system_to_value(system: &LinearSystem) -> Value {
    let columns: Vec<Value> = system
        .columns
        .iter()
        .map(|c| match c {
            Column::Monomial(m) => json!(m.exponents()),
            Column::Symmetric(e) => json!([e.a, e.b]),
        })
        .collect();
    let matrix: Vec<Value> = system.matrix.iter().map(|row| fractions(row)).collect();
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(system.kind.as_str()));
    obj.insert("n".into(), json!(system.n));
    obj.insert("d".into(), json!(system.d));
    obj.insert("columns".into(), Value::Array(columns));
    obj.insert("matrix".into(), Value::Array(matrix));
    obj.insert("rhs".into(), fractions(&system.rhs));
    obj.insert("distinguished".into(), json!(system.distinguished));
    if !system.fixed.is_empty() {
        let fixed: Vec<Value> = system.fixed.iter().map(|(m, c)| term_value(m, c)).collect();
        obj.insert("fixed".into(), Value::Array(fixed));
    }
    Value::Object(obj)
}

pub fn certificate_to_value(cert: &Certificate) -> Value {
    let checks: Vec<Value> = cert
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
        .collect();
    json!({
        "subject": polynomial_to_value(&cert.subject),
        "checks": checks,
        "verdict": cert.verdict_str(),
    })
}

pub fn solution_to_value(solution: &SupportSolution) -> Value {
    json!({
        "support": solution.support,
        "values": fractions(&solution.values),
        "l0": solution.l0,
        "l1": fraction(&solution.l1),
        "unique": solution.unique,
        "polynomial": polynomial_to_value(&solution.polynomial),
    })
}

pub fn search_report_to_value(report: &SearchReport) -> Value {
    let witnesses: Vec<Value> = report.witnesses.iter().map(solution_to_value).collect();
    json!({
        "min_l0": report.min_l0,
        "witnesses": witnesses,
        "nodes_explored": report.nodes_explored,
        "prunes_by_certificate": report.prunes_by_certificate,
    })
}

pub fn lp_result_to_value(result: &LpResult) -> Value {
    json!({
        "status": format!("{:?}", result.status).to_lowercase(),
        "point": result.point.as_deref().map(fractions),
        "value": result.value.as_ref().map(fraction),
    })
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::invariant_poly;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    #[test]
    fn polynomial_layout() {
        let p = invariant_poly(3);
        let v = polynomial_to_value(&p);
        assert_eq!(
            v,
            json!({"nvars": 2, "terms": [
                {"exp": [1, 1], "coef": "3/1"},
                {"exp": [3, 0], "coef": "1/1"},
                {"exp": [0, 3], "coef": "1/1"},
            ]})
        );
        assert_eq!(polynomial_from_value(&v).unwrap(), p);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let bad = r#"{"nvars": 2, "terms": [{"exp": [1, 0], "coef": "1/1"}, {"exp": [0, 1], "coef": "0.5"}]}"#;
        match parse_polynomial(bad) {
            Err(Error::Format { field, .. }) => assert_eq!(field, "terms[1].coef"),
            other => panic!("{other:?}"),
        }
        let cases = [
            (r#"{"terms": []}"#, "nvars"),
            (r#"{"nvars": 2}"#, "terms"),
            (r#"{"nvars": 2, "terms": [{"exp": [1], "coef": "1"}]}"#, "terms[0].exp"),
            (r#"{"nvars": 2, "terms": [{"exp": [1, 0]}]}"#, "terms[0].coef"),
            (r#"{"nvars": 2, "terms": [{"exp": [1, 0], "coef": "1"}, {"exp": [1, 0], "coef": "1"}]}"#, "terms[1].exp"),
            ("[1, 2", "$"),
        ];
        for (text, expected) in cases {
            match parse_polynomial(text) {
                Err(Error::Format { field, .. }) => assert_eq!(field, expected, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn system_layout() {
        let sys = crate::system::build_symmetric(3).unwrap();
        let v = system_to_value(&sys);
        assert_eq!(v["kind"], "symmetric");
        assert_eq!(v["columns"][0], json!([0, 1]));
        assert!(v.get("fixed").is_none());
        let reduced = crate::system::reduce_support(&crate::system::build_homogenized(2, 5, false).unwrap()).unwrap();
        assert_eq!(system_to_value(&reduced)["fixed"].as_array().unwrap().len(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 128, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]
        #[test]
        fn round_trip(terms in proptest::collection::vec((0u32..5, 0u32..5, 0u32..3, -20i64..20, 1i64..9), 0..10)) {
            let mut p = Polynomial::zero(3);
            for (a, b, c, num, den) in terms {
                p = p + Polynomial::term(Monomial::new(vec![a, b, c]), ratio(num, den));
            }
            let text = to_pretty(&polynomial_to_value(&p));
            prop_assert_eq!(parse_polynomial(&text).unwrap(), p);
        }
    }
}
