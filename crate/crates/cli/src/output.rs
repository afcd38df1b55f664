//! JSON encodings shared by all reports. Rationals are always strings.

use evoalg::derivations::MatrixSpace;
use evoalg::local_maps::{LocalVerdict, Witness};
use evoalg::{MatrixQ, Rational};
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &MatrixQ) -> Value {
    Value::Array(m.row_vectors().map(vector).collect())
}

pub fn space(s: &MatrixSpace) -> Value {
    json!({
        "dim": s.dim(),
        "generators": s.generators().iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn verdict(v: &LocalVerdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Point(u)) => vector(u),
        Some(Witness::Pair(u, w)) => json!([vector(u), vector(w)]),
    };
    json!({
        "verdict": v.verdict.name(),
        "method": v.method.name(),
        "witness": witness,
    })
}

/// One line per row, entries separated by spaces, for text output.
pub fn matrix_text(m: &MatrixQ, indent: &str) -> String {
    m.row_vectors()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("{indent}[{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn vector_text(v: &[Rational]) -> String {
    let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", cells.join(", "))
}

pub fn verdict_text(v: &LocalVerdict) -> String {
    let witness = match &v.witness {
        None => String::new(),
        Some(Witness::Point(u)) => format!(", witness u = {}", vector_text(u)),
        Some(Witness::Pair(u, w)) => {
            format!(", witness pair u = {}, v = {}", vector_text(u), vector_text(w))
        }
    };
    format!("{} ({}){witness}", v.verdict.name(), v.method.name())
}

/// An algebra file with one matrix row per line.
pub fn algebra_file_text(m: &MatrixQ) -> String {
    let rows: Vec<String> = m
        .row_vectors()
        .map(|r| format!("    {}", serde_json::to_string(&vector(r)).expect("strings")))
        .collect();
    format!("{{\n  \"n\": {},\n  \"matrix\": [\n{}\n  ]\n}}\n", m.rows(), rows.join(",\n"))
}
