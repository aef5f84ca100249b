//! Canonical JSON encodings. `serde_json::Map` keeps keys sorted.

use serde_json::{json, Map, Value};
use transgress_core::order::FinitePoset;
use transgress_core::transgression::{Transgression, TriangulationSystem};
use transgress_core::{Chain, OrientedComplex, Rational, Simplex};

pub const SCHEMA_VERSION: u64 = 1;

pub fn rational(x: &Rational) -> Value { Value::String(x.to_string()) }

pub fn rationals(xs: &[Rational]) -> Value { Value::Array(xs.iter().map(rational).collect()) }

pub fn simplex(s: &Simplex) -> Value { Value::Array(s.vertices().iter().map(|v| Value::String(v.to_string())).collect()) }

pub fn chain(c: &Chain<Rational>) -> Value {
  Value::Array(c.iter().map(|(s, x)| json!({ "simplex": simplex(s), "coefficient": rational(x) })).collect())
}

pub fn complex(x: &OrientedComplex) -> Value {
  json!({
    "vertices": x.vertices().map(|v| Value::String(v.to_string())).collect::<Vec<_>>(),
    "simplices": x.maximal_simplices().iter().map(simplex).collect::<Vec<_>>(),
  })
}

pub fn dims(v: &[usize]) -> Value { json!(v) }

pub fn names(p: &FinitePoset, elements: &[usize]) -> Value { Value::Array(elements.iter().map(|&x| Value::String(p.name(x).to_string())).collect()) }

/// Values of `γ` as chains on the upper complex, one entry per comparable pair.
pub fn transgression(tri: &TriangulationSystem<Rational>, gamma: &Transgression<Rational>) -> Value {
  let p = tri.system.poset();
  Value::Array(
    gamma
      .values
      .iter()
      .map(|(&(a, b), v)| json!({ "from": p.name(a), "to": p.name(b), "chain": chain(&tri.chain(b, gamma.degree, v)) }))
      .collect(),
  )
}

/// Wraps a result with the command name and schema version.
pub fn document(command: &str, body: Value) -> Value {
  let mut map = match body {
    Value::Object(m) => m,
    other => Map::from_iter([("result".to_string(), other)]),
  };
  map.insert("command".into(), Value::String(command.into()));
  map.insert("schema_version".into(), json!(SCHEMA_VERSION));
  Value::Object(map)
}

/// One `key: value` line per top-level field.
pub fn summary(doc: &Value) -> String {
  let mut out = String::new();
  if let Value::Object(map) = doc {
    for (k, v) in map {
      let shown = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
      };
      out.push_str(&format!("{k}: {shown}\n"));
    }
  }
  out
}
