//! Seeded verification suites for the functional equations.
//!
//! Samples are drawn sequentially from one ChaCha8 stream, evaluated in
//! parallel, and reported in draw order, so a fixed seed gives identical output.

use clap::ValueEnum;
use lerch_zeta::boundary::renorm_fe_residual;
use lerch_zeta::hermite::{lhat_n, lhat_n_fe_residual};
use lerch_zeta::lerch::{lerch_transform_check, lhat_fe_residual, LerchPoint, Param};
use lerch_zeta::zeta_integral::{fe_residual_general, Parity, Registry, TestFunction};
use lerch_zeta::{ComplexValue, PrecisionContext, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::small;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// L̂±*(s,a,c) against its dual at (1-s, 1-c, a)
    Weil,
    /// F_k(f; s,a,c) against F_k(Ff; 1-s, 1-c, a) for the built-in test functions
    ZetaIntegral,
    /// ζ*(1-s,a,c) against the two-term transformation formula
    Transform,
    /// Renormalized L̂^{R,±} on the closed unit square, edges included
    Renorm,
    /// L̂_n for n ≤ 6; residuals relative to max(1, |L̂_n|)
    Hermite,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Weil => "weil",
            Suite::ZetaIntegral => "zeta-integral",
            Suite::Transform => "transform",
            Suite::Renorm => "renorm",
            Suite::Hermite => "hermite",
        }
    }
}

enum Variant {
    Sign(Sign),
    Function { f: TestFunction, k: u32 },
    Order(u32),
    Plain,
}

struct Sample {
    re: f64,
    im: f64,
    a: Param,
    c: Param,
    variant: Variant,
}

fn rational(rng: &mut ChaCha8Rng, closed: bool) -> Param {
    let den = rng.gen_range(2i64..=40);
    let num = if closed { rng.gen_range(0..=den) } else { rng.gen_range(1..den) };
    Param::ratio(num, den)
}

fn sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn draw(suite: Suite, count: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions: Vec<TestFunction> = Registry::builtin().iter().cloned().collect();
    let (re_lo, re_hi, im_max) = match suite {
        Suite::Weil => (-5.0, 5.0, 20.0),
        Suite::ZetaIntegral | Suite::Hermite => (-2.0, 3.0, 8.0),
        Suite::Transform | Suite::Renorm => (-3.0, 4.0, 10.0),
    };
    (0..count)
        .map(|_| {
            let re = rng.gen_range(re_lo..re_hi);
            let im = rng.gen_range(-im_max..im_max);
            let closed = suite == Suite::Renorm;
            let a = rational(&mut rng, closed);
            let c = rational(&mut rng, closed);
            let variant = match suite {
                Suite::Weil | Suite::Renorm => Variant::Sign(sign(&mut rng)),
                Suite::ZetaIntegral => {
                    let f = functions[rng.gen_range(0..functions.len())].clone();
                    let k = match f.parity() {
                        Parity::Even => 0,
                        Parity::Odd => 1,
                        Parity::Mixed => rng.gen_range(0..2),
                    };
                    Variant::Function { f, k }
                }
                Suite::Hermite => Variant::Order(rng.gen_range(0..=6)),
                Suite::Transform => Variant::Plain,
            };
            Sample { re, im, a, c, variant }
        })
        .collect()
}

fn residual(suite: Suite, sample: &Sample, ctx: &PrecisionContext) -> lerch_zeta::Result<f64> {
    let s = ComplexValue::from_f64(sample.re, sample.im, ctx.internal_bits());
    let (a, c) = (&sample.a, &sample.c);
    let point = || LerchPoint::new(s.clone(), a.clone(), c.clone());
    Ok(match (&sample.variant, suite) {
        (Variant::Sign(sign), Suite::Renorm) => renorm_fe_residual(*sign, &s, a, c, ctx)?.residual,
        (Variant::Sign(sign), _) => lhat_fe_residual(*sign, &point(), ctx)?.residual,
        (Variant::Function { f, k }, _) => fe_residual_general(f, *k, &s, a, c, ctx)?.residual,
        (Variant::Order(n), _) => {
            let r = lhat_n_fe_residual(*n, &s, a, c, ctx)?;
            r.residual / lhat_n(*n, &s, a, c, ctx)?.value.abs_f64().max(1.0)
        }
        (Variant::Plain, _) => lerch_transform_check(&point(), ctx)?.residual,
    })
}

fn describe(sample: &Sample) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("s".into(), json!({ "re": sample.re, "im": sample.im }));
    m.insert("a".into(), json!(sample.a.to_string()));
    m.insert("c".into(), json!(sample.c.to_string()));
    match &sample.variant {
        Variant::Sign(Sign::Plus) => m.insert("sign".into(), json!("+")),
        Variant::Sign(Sign::Minus) => m.insert("sign".into(), json!("-")),
        Variant::Function { f, k } => {
            m.insert("k".into(), json!(k));
            m.insert("function".into(), json!(f.name()))
        }
        Variant::Order(n) => m.insert("n".into(), json!(n)),
        Variant::Plain => None,
    };
    m
}

pub struct Report {
    pub json: Value,
    pub failures: usize,
}

/// Runs `samples` draws of `suite` and compares each residual with `tol`.
/// A sample whose evaluation errors counts as a failure.
pub fn run(suite: Suite, samples: usize, seed: u64, tol: f64, ctx: &PrecisionContext) -> Result<Report, CliError> {
    if samples == 0 {
        return Err(CliError::Parse("--samples must be positive".into()));
    }
    let drawn = draw(suite, samples, seed);
    let results: Vec<lerch_zeta::Result<f64>> = drawn.par_iter().map(|x| residual(suite, x, ctx)).collect();
    let mut finite: Vec<f64> = results.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    finite.sort_by(f64::total_cmp);
    let median = match finite.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => finite[n / 2],
        n => 0.5 * (finite[n / 2 - 1] + finite[n / 2]),
    };
    let max = finite.last().copied().unwrap_or(f64::NAN);
    let mut failures = Vec::new();
    for (index, (sample, r)) in drawn.iter().zip(&results).enumerate() {
        let mut entry = describe(sample);
        entry.insert("index".into(), json!(index));
        match r {
            Ok(v) if *v <= tol => continue,
            Ok(v) => entry.insert("residual".into(), small(*v)),
            Err(e) => entry.insert("error".into(), json!(e.to_string())),
        };
        failures.push(Value::Object(entry));
    }
    let count = failures.len();
    let json = json!({
        "suite": suite.name(),
        "samples": samples,
        "seed": seed,
        "prec": ctx.working_bits(),
        "tol": small(tol),
        "max": small(max),
        "median": small(median),
        "failures": failures,
        "pass": count == 0,
    });
    Ok(Report { json, failures: count })
}
