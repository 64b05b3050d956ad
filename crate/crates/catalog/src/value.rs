//! JSON rendering of exact values and the comparison rules for expectations.
//!
//! Classes are rendered as coordinate lists. In an expectation, any string
//! under a class-valued key is evaluated in the case namespace first, so
//! `"H - F"` and `[1, -1, 0]` mean the same thing. Rationals are integers or
//! `"p/q"` strings in lowest terms on both sides.

use std::str::FromStr;

use dpverify_core::{DivisorClass, Namespace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::case::LoadError;

/// Keys whose string values are class expressions.
const CLASS_KEYS: &[&str] = &["class", "classes", "witnesses", "violators", "curves", "part", "rest", "parts"];

/// Keys whose array values are compared as sets.
const SET_KEYS: &[&str] =
    &["classes", "witnesses", "violators", "curves", "parts", "feasible", "triples", "radicands", "pairings"];

/// Suffix turning an expected key into a subset test against the unsuffixed result key.
const INCLUDE: &str = "_include";

pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        int(q.numer())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn class(c: &DivisorClass) -> Value {
    Value::Array(c.coords().iter().map(int).collect())
}

pub fn classes<'a>(cs: impl IntoIterator<Item = &'a DivisorClass>) -> Value {
    Value::Array(cs.into_iter().map(class).collect())
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

fn base_key(key: &str) -> &str {
    key.strip_suffix(INCLUDE).unwrap_or(key)
}

fn resolve_class(s: &str, ns: Option<&Namespace>, location: &str) -> Result<Value, LoadError> {
    let ns = ns.ok_or_else(|| LoadError::Invalid {
        location: location.to_string(),
        message: "class expression in a case without a lattice".into(),
    })?;
    let c = ns.eval(s).map_err(|e| match e {
        dpverify_core::ExprError::Unbound(name) => LoadError::Unbound { location: location.to_string(), name },
        other => LoadError::Invalid { location: location.to_string(), message: other.to_string() },
    })?;
    Ok(class(&c))
}

/// Canonical form of an expectation.
pub fn normalize_expectation(
    v: &Value,
    key: Option<&str>,
    ns: Option<&Namespace>,
    location: &str,
) -> Result<Value, LoadError> {
    let class_key = key.is_some_and(|k| CLASS_KEYS.contains(&base_key(k)));
    Ok(match v {
        Value::String(s) if class_key => resolve_class(s, ns, location)?,
        Value::String(s) => match BigRational::from_str(s.trim()) {
            Ok(q) => rational(&q),
            Err(_) => v.clone(),
        },
        Value::Array(items) => Value::Array(
            items
                .iter()
                .enumerate()
                .map(|(i, x)| normalize_expectation(x, key, ns, &format!("{location}[{i}]")))
                .collect::<Result<_, _>>()?,
        ),
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, x) in map {
                out.insert(k.clone(), normalize_expectation(x, Some(k), ns, &format!("{location}.{k}"))?);
            }
            Value::Object(out)
        }
        other => other.clone(),
    })
}

fn sorted(items: &[Value]) -> Vec<String> {
    let mut keys: Vec<String> = items.iter().map(Value::to_string).collect();
    keys.sort();
    keys
}

/// Every difference between `expect` and `got`, as human-readable lines.
/// Object expectations are partial: keys absent from `expect` are not compared.
pub fn mismatches(expect: &Value, got: &Value) -> Vec<String> {
    let mut out = Vec::new();
    compare(expect, got, None, "", &mut out);
    out
}

fn compare(expect: &Value, got: &Value, key: Option<&str>, path: &str, out: &mut Vec<String>) {
    match (expect, got) {
        (Value::Object(e), Value::Object(g)) => {
            for (k, ev) in e {
                let here = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                if let Some(base) = k.strip_suffix(INCLUDE) {
                    match (ev, g.get(base)) {
                        (Value::Array(want), Some(Value::Array(have))) => {
                            let have = sorted(have);
                            for w in want {
                                if !have.contains(&w.to_string()) {
                                    out.push(format!("{here}: {w} not among {base}"));
                                }
                            }
                        }
                        _ => out.push(format!("{here}: needs a list and a list-valued `{base}` result")),
                    }
                    continue;
                }
                match g.get(k) {
                    Some(gv) => compare(ev, gv, Some(k), &here, out),
                    None => out.push(format!("{here}: no such key in the result")),
                }
            }
        }
        (Value::Array(e), Value::Array(g)) if key.is_some_and(|k| SET_KEYS.contains(&k)) => {
            if sorted(e) != sorted(g) {
                out.push(format!("{path}: expected set {expect}, got {got}"));
            }
        }
        (Value::Array(e), Value::Array(g)) if e.len() == g.len() => {
            for (i, (ev, gv)) in e.iter().zip(g).enumerate() {
                compare(ev, gv, key, &format!("{path}[{i}]"), out);
            }
        }
        _ => {
            if expect != got {
                let label = if path.is_empty() { "value" } else { path };
                out.push(format!("{label}: expected {expect}, got {got}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn partial_objects_and_sets() {
        let got = json!({"classes": [[1, 0], [0, 1]], "count": 2, "extra": true});
        assert!(mismatches(&json!({"classes": [[0, 1], [1, 0]]}), &got).is_empty());
        assert!(mismatches(&json!({"classes_include": [[0, 1]]}), &got).is_empty());
        assert_eq!(mismatches(&json!({"count": 3}), &got).len(), 1);
        assert_eq!(mismatches(&json!({"missing": 3}), &got).len(), 1);
        assert_eq!(mismatches(&json!({"classes_include": [[2, 2]]}), &got).len(), 1);
    }

    #[test]
    fn ordered_lists_stay_ordered() {
        let got = json!({"signature": [1, 2, 0]});
        assert_eq!(mismatches(&json!({"signature": [2, 1, 0]}), &got).len(), 2);
    }

    #[test]
    fn rationals_normalise() {
        let v = normalize_expectation(&json!({"z": "2/4", "n": "6/3", "tag": "flop"}), None, None, "").unwrap();
        assert_eq!(v, json!({"z": "1/2", "n": 2, "tag": "flop"}));
    }
}
