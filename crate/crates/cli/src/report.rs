//! JSON encodings shared by every command. Objects are backed by sorted maps,
//! so key order is fixed and two runs on the same input print the same bytes.

use hsym::abelian::{FGAbelianGroup, FiniteGroup, GroupRingElement};
use hsym::anomaly::Cocycle2;
use hsym::complex::{Orientation, Simplex, SimplicialComplex, StarOpen, Subcomplex};
use hsym::symmetry::SymmetryOperator;
use hsym::{Error, Int};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Bumped on any change to the shape of a report: major for removed or
/// renamed keys, minor for added keys, patch for formatting fixes.
pub const SCHEMA_VERSION: &str = "1.0.0";

pub fn report_schema_version() -> &'static str {
    SCHEMA_VERSION
}

/// Machine integers when they fit, decimal strings otherwise.
pub fn int_json(x: &Int) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn ints_json(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

pub fn group_json(g: &FGAbelianGroup) -> Value {
    json!({
        "display": g.to_string(),
        "rank": g.rank(),
        "torsion": ints_json(&g.torsion()),
    })
}

fn sorted(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    for s in &mut simplices {
        s.sort_unstable();
    }
    simplices.sort();
    simplices
}

pub fn simplices_json(simplices: Vec<Simplex>) -> Value {
    json!(sorted(simplices))
}

pub fn complex_json(source: &str, x: &SimplicialComplex) -> Value {
    let facets = x.facets().into_iter().map(|i| x.simplex(i).to_vec()).collect();
    json!({
        "source": source,
        "dimension": x.dimension(),
        "f_vector": x.f_vector(),
        "facets": simplices_json(facets),
    })
}

/// An open by its minimal generators.
pub fn open_json(u: &StarOpen) -> Value {
    simplices_json(u.generators())
}

pub fn subcomplex_json(k: &Subcomplex) -> Value {
    let x = k.to_complex();
    simplices_json(x.facets().into_iter().map(|i| x.simplex(i).to_vec()).collect())
}

pub fn orientation_json(o: &Orientation) -> Value {
    let mut entries: Vec<(Simplex, i64)> = o.entries().map(|(s, e)| (s.to_vec(), e)).collect();
    entries.sort();
    Value::Array(entries.into_iter().map(|(s, e)| json!([s, e])).collect())
}

pub fn operator_json(op: &SymmetryOperator, degree: usize) -> Value {
    let label = op.label().map_or(Value::Null, |l| {
        json!({
            "support": simplices_json(l.support.clone()),
            "value": ints_json(&l.label),
            "orientation": orientation_json(&l.orientation),
        })
    });
    json!({
        "open": open_json(op.open()),
        "degree": degree,
        "group": group_json(op.group()),
        "coordinates": ints_json(op.class()),
        "label": label,
    })
}

pub fn cocycle_json(c: &Cocycle2) -> Value {
    let g = c.group();
    let n = g.order();
    let entries: Vec<Value> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| json!([g.name(a), g.name(b), c.value(a, b)]))
        .collect();
    json!({ "modulus": c.modulus(), "entries": entries })
}

pub fn finite_group_json(g: &FiniteGroup) -> Value {
    json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "elements": (0..g.order()).map(|i| g.name(i).to_string()).collect::<Vec<_>>(),
    })
}

pub fn ring_element_json(x: &GroupRingElement) -> Value {
    let g = x.group();
    let coefficients: Vec<Value> = (0..g.order()).map(|i| int_json(&x.coefficient(i))).collect();
    json!({ "display": x.to_string(), "coefficients": coefficients })
}

pub fn error_json(command: &str, e: &Error) -> Value {
    envelope(command, json!({ "error": { "code": e.code(), "message": e.to_string() } }))
}

/// Adds the schema version and command name to a report body.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    Value::Object(map)
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
