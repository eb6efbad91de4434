//! JSON rendering of evaluation results with full-precision decimal numbers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use lerch_zeta::numerics::{float_to_decimal, ComplexValue};
use lerch_zeta::EvalResult;
use rug::Float;
use serde_json::{json, Map, Number, Value};

/// A decimal string as a JSON number; non-finite values become null.
pub fn decimal(x: &Float, digits: usize) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    float_to_decimal(x, digits).parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

pub fn small(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    format!("{x:e}").parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

pub fn complex(z: &ComplexValue, digits: usize) -> Value {
    json!({ "re": decimal(&z.re, digits), "im": decimal(&z.im, digits) })
}

/// `{value: {re, im}, err_bound, pole?: {location, residue}}`.
pub fn eval_result(r: &EvalResult, digits: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("value".into(), complex(&r.value, digits));
    m.insert("err_bound".into(), small(r.err_bound));
    if let Some(p) = &r.pole {
        m.insert("pole".into(), json!({ "location": complex(&p.location, digits), "residue": complex(&p.residue, digits) }));
    }
    m
}

/// Destination for command output: a file (opened before any work) or stdout.
pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, io::Error> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json(w: &mut dyn Write, v: &Value) -> Result<(), io::Error> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    w.write_all(b"\n")?;
    w.flush()
}
