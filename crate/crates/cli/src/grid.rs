//! Tensor-grid export, c outer and a inner, both ascending.

use std::io::Write;

use clap::ValueEnum;
use lerch_zeta::lerch::Param;
use lerch_zeta::numerics::float_to_decimal;
use lerch_zeta::{ComplexValue, EvalResult, PrecisionContext};
use rayon::prelude::*;
use serde_json::Value;

use crate::error::CliError;
use crate::functions::{evaluate_point, Func};
use crate::output::{eval_result, write_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct GridRequest {
    pub func: Func,
    pub n: Option<u32>,
    pub s: ComplexValue,
    pub a: Vec<Param>,
    pub c: Vec<Param>,
    pub format: Format,
}

pub struct Row {
    pub a: Param,
    pub c: Param,
    pub result: EvalResult,
}

/// Evaluates every point with the same code path as `eval`, so each row
/// matches the single-point evaluation exactly.
pub fn evaluate(req: &GridRequest, ctx: &PrecisionContext) -> Result<Vec<Row>, CliError> {
    if !req.func.on_grids() {
        return Err(CliError::Parse("grids need a function of both a and c".into()));
    }
    let points: Vec<(&Param, &Param)> = req.c.iter().flat_map(|c| req.a.iter().map(move |a| (a, c))).collect();
    points
        .par_iter()
        .map(|&(a, c)| {
            let result = evaluate_point(req.func, req.n, &req.s, a, c, ctx)?;
            Ok(Row { a: a.clone(), c: c.clone(), result })
        })
        .collect()
}

pub fn write(req: &GridRequest, rows: &[Row], digits: usize, out: &mut dyn Write) -> Result<(), CliError> {
    match req.format {
        Format::Json => {
            let arr = rows
                .iter()
                .map(|r| {
                    let mut m = serde_json::Map::new();
                    m.insert("a".into(), Value::String(r.a.to_string()));
                    m.insert("c".into(), Value::String(r.c.to_string()));
                    m.extend(eval_result(&r.result, digits));
                    Value::Object(m)
                })
                .collect();
            write_json(out, &Value::Array(arr))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["a", "c", "re", "im", "err_bound"]).map_err(csv_error)?;
            for r in rows {
                let v = &r.result.value;
                w.write_record([
                    r.a.to_string(),
                    r.c.to_string(),
                    float_to_decimal(&v.re, digits),
                    float_to_decimal(&v.im, digits),
                    format!("{:e}", r.result.err_bound),
                ])
                .map_err(csv_error)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Output(e.to_string())
}
