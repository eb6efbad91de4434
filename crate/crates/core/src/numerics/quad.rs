//! Double-exponential quadrature on finite intervals and on (0, ∞).

use rug::float::Constant;
use rug::Float;

use super::complex::ComplexValue;
use crate::error::{Error, Result};

/// Quadrature controls: levels run from `min_level` to `level`, halving the step each time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub level: u32,
    pub min_level: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { level: 10, min_level: 3 }
    }
}

impl QuadratureSpec {
    pub fn with_level(level: u32) -> Self {
        QuadratureSpec { level, min_level: 3.min(level) }
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: ComplexValue,
    /// Error estimate: difference of the last two levels plus truncation of the u-range.
    pub err: f64,
    pub level: u32,
    /// Per-level difference estimates, starting at level 1.
    pub history: Vec<f64>,
}

enum Map {
    /// x = mid + half * tanh(π/2 sinh u)
    TanhSinh { mid: Float, half: Float },
    /// x = exp(π/2 sinh u)
    ExpSinh,
}

impl Map {
    fn point(&self, u: &Float, prec: u32) -> (Float, Float) {
        let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
        let sh = Float::with_val(prec, u.sinh_ref());
        let ch = Float::with_val(prec, u.cosh_ref());
        let v = Float::with_val(prec, &half_pi * &sh);
        match self {
            Map::TanhSinh { mid, half } => {
                // 1 - tanh|v| = 2 / (1 + e^{2|v|}) keeps points distinct near the ends
                let av = Float::with_val(prec, v.abs_ref());
                let e2 = Float::with_val(prec, Float::with_val(prec, &av * 2u32).exp_ref());
                let comp = Float::with_val(prec, 2u32 / Float::with_val(prec, &e2 + 1u32));
                let off = Float::with_val(prec, half * Float::with_val(prec, 1u32 - &comp));
                let x = if v.is_sign_negative() {
                    Float::with_val(prec, mid - &off)
                } else {
                    Float::with_val(prec, mid + &off)
                };
                let chv = Float::with_val(prec, v.cosh_ref());
                let w = Float::with_val(prec, half * &half_pi) * &ch / Float::with_val(prec, chv.square_ref());
                (x, w)
            }
            Map::ExpSinh => {
                let x = Float::with_val(prec, v.exp_ref());
                let w = Float::with_val(prec, &x * &half_pi) * &ch;
                (x, w)
            }
        }
    }
}

fn run<F>(map: Map, mut f: F, prec: u32, tol: f64, spec: QuadratureSpec, u_lo: f64, u_hi: f64) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<ComplexValue>,
{
    let eval = |u: f64, f: &mut F| -> Result<ComplexValue> {
        let uf = Float::with_val(prec, u);
        let (x, w) = map.point(&uf, prec);
        if !x.is_finite() || w.is_zero() || !w.is_finite() {
            return Ok(ComplexValue::zero(prec));
        }
        let fx = f(&x)?;
        Ok(fx.scale(&w))
    };

    // Level 0 on the integer grid.
    let mut sum = ComplexValue::zero(prec);
    let k_lo = u_lo.ceil() as i64;
    let k_hi = u_hi.floor() as i64;
    for k in k_lo..=k_hi {
        let t = eval(k as f64, &mut f)?;
        sum = &sum + &t;
    }
    let mut prev = sum.clone();
    let mut history = Vec::new();
    let mut level = 0;
    let mut last_est = f64::INFINITY;
    let mut prev_est = f64::INFINITY;
    while level < spec.level {
        level += 1;
        let h = 2f64.powi(-(level as i32));
        let n_lo = (u_lo / h).ceil() as i64;
        let n_hi = (u_hi / h).floor() as i64;
        let mut add = ComplexValue::zero(prec);
        for n in n_lo..=n_hi {
            if n % 2 == 0 {
                continue;
            }
            let t = eval(n as f64 * h, &mut f)?;
            add = &add + &t;
        }
        sum = &sum + &add;
        let current = sum.scale_f64(h);
        let est = (&current - &prev).abs_f64();
        history.push(est);
        prev_est = last_est;
        last_est = est;
        prev = current;
        if level >= spec.min_level && est <= tol {
            break;
        }
    }
    let h = 2f64.powi(-(level as i32));
    // size of the outermost terms actually summed at the final level
    let lo_end = eval((u_lo / h).ceil() * h, &mut f)?.abs_f64();
    let hi_end = eval((u_hi / h).floor() * h, &mut f)?.abs_f64();
    let trunc = (lo_end + hi_end) * h;
    let err = last_est + trunc + prev.abs_f64() * 2f64.powi(-(prec as i32) + 4);
    if err > tol && !(last_est <= prev_est / 2.0) {
        return Err(Error::QuadratureNonconvergent(format!(
            "level {level}: estimate {last_est:e} did not halve (previous {prev_est:e})"
        )));
    }
    Ok(QuadResult { value: prev, err, level, history })
}

/// u-range for tanh-sinh so that the discarded weights are below 2^-prec.
fn tanh_sinh_range(prec: u32) -> f64 {
    let target = prec as f64 * std::f64::consts::LN_2 + 20.0;
    (2.0 * target / std::f64::consts::PI).ln().max(1.0) + 0.5
}

/// ∫_lo^hi f(x) dx for integrands analytic inside the interval.
pub fn tanh_sinh<F>(f: F, lo: &Float, hi: &Float, prec: u32, tol: f64, spec: QuadratureSpec) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<ComplexValue>,
{
    let mid = Float::with_val(prec, lo + hi) / 2u32;
    let half = Float::with_val(prec, hi - lo) / 2u32;
    let u = tanh_sinh_range(prec);
    run(Map::TanhSinh { mid, half }, f, prec, tol, spec, -u, u)
}

/// ∫_0^∞ f(x) dx for integrands with algebraic behaviour at 0 and fast decay at ∞.
///
/// `sigma` is a lower bound for the exponent ρ in f(x) = O(x^{ρ-1}) as x → 0;
/// it fixes how far the negative u-range must extend.
pub fn exp_sinh<F>(f: F, sigma: f64, decay_scale: f64, prec: u32, tol: f64, spec: QuadratureSpec) -> Result<QuadResult>
where
    F: FnMut(&Float) -> Result<ComplexValue>,
{
    if sigma <= 0.0 {
        return Err(Error::QuadratureNonconvergent(format!("integrand not integrable at 0 (exponent {sigma})")));
    }
    let target = prec as f64 * std::f64::consts::LN_2 + 20.0;
    // x^sigma < 2^-prec  <=>  (π/2) sinh|u| > target / sigma
    let u_neg = (2.0 * target / (std::f64::consts::PI * sigma)).asinh() + 0.25;
    // decay like e^{-x^2 / decay_scale}: x^2 > decay_scale * target
    let x_max = (decay_scale * target).sqrt().max(2.0);
    let u_pos = (2.0 * x_max.ln() / std::f64::consts::PI).asinh() + 0.25;
    run(Map::ExpSinh, f, prec, tol, spec, -u_neg, u_pos)
}
