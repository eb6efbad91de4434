use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::ball::{ulp_bound, Ball, EvalResult};
use super::complex::ComplexValue;
use super::{escalate, PrecisionContext};
use crate::error::{Error, Result};

/// Bernoulli numbers B_0, B_1, ..., grown on demand.
fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// B_m as an exact rational.
pub(crate) fn bernoulli(m: usize) -> Rational {
    let mut table = bernoulli_table().lock().expect("bernoulli cache poisoned");
    while table.len() <= m {
        let n = table.len();
        // B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (j, b) in table.iter().enumerate() {
            acc += Rational::from(&binom * b.numer()) / Rational::from(b.denom());
            binom *= (n + 1 - j) as u64;
            binom /= (j + 1) as u64;
        }
        let b = -acc / Rational::from(n as u64 + 1);
        table.push(b);
    }
    table[m].clone()
}

fn nonpositive_integer(z: &ComplexValue) -> Option<i64> {
    z.as_exact_integer().filter(|n| *n <= 0)
}

/// Stirling sum for ln Γ(z), Re z large; returns value and absolute error.
fn stirling_ln_gamma(z: &ComplexValue, prec: u32) -> (ComplexValue, f64) {
    let absz = z.abs_f64();
    let cos_t = z.re.to_f64() / absz;
    // sec^2(theta/2) = 2 / (1 + cos theta)
    let sec2 = 2.0 / (1.0 + cos_t);
    let target = Float::with_val(64, Float::i_exp(1, -(prec as i32)));

    let half = Float::with_val(prec, 0.5);
    let ln_z = z.ln();
    let zm = z.add_real(&Float::with_val(prec, -&half));
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let half_ln_2pi = Float::with_val(prec, two_pi.ln_ref()) / 2u32;
    let mut sum = &(&zm * &ln_z) - z;
    sum = sum.add_real(&half_ln_2pi);

    let zinv = z.recip();
    let zinv2 = zinv.square();
    let mut zpow = zinv.clone();
    let mut k = 1usize;
    let remainder;
    loop {
        // bound on the remainder after k-1 terms
        let b = Float::with_val(64, bernoulli(2 * k).abs());
        let denom = Float::with_val(64, (2 * k * (2 * k - 1)) as f64)
            * Float::with_val(64, Float::with_val(64, absz).pow((2 * k - 1) as u32));
        let bound = b / denom * Float::with_val(64, sec2).pow(k as u32);
        if bound < target || k > 4 * prec as usize {
            remainder = bound.to_f64();
            break;
        }
        let coeff = Float::with_val(prec, bernoulli(2 * k)) / ((2 * k * (2 * k - 1)) as u64);
        sum = &sum + &zpow.scale(&coeff);
        zpow = &zpow * &zinv2;
        k += 1;
    }
    let rough = (z.abs_f64() * (1.0 + absz.ln().abs())) + 4.0;
    let round = rough * (k as f64 + 8.0) * 2f64.powi(-(prec as i32) + 2);
    (sum, remainder + round)
}

fn shift_threshold(prec: u32) -> f64 {
    (0.14 * prec as f64).ceil() + 8.0
}

/// Γ(z) at `prec` bits with a relative-error-derived radius.
pub(crate) fn gamma_ball(z: &ComplexValue, prec: u32) -> Result<Ball> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(n));
    }
    if z.is_real() {
        let g = Float::with_val(prec, z.re.gamma_ref());
        let mid = ComplexValue::from_real(&g);
        let rad = ulp_bound(&mid);
        return Ok(Ball::new(mid, rad));
    }
    let (num, den, rel) = shifted_parts(z, prec);
    let mid = &num.exp() / &den;
    let rad = mid.abs_f64() * rel + ulp_bound(&mid);
    Ok(Ball::new(mid.with_prec(prec), rad + ulp_bound(&mid)))
}

/// 1/Γ(z): entire, exactly zero at the poles of Γ.
pub(crate) fn rgamma_ball(z: &ComplexValue, prec: u32) -> Ball {
    if nonpositive_integer(z).is_some() {
        return Ball::zero(prec);
    }
    if z.is_real() {
        let g = Float::with_val(prec + 8, z.re.gamma_ref());
        let r = Float::with_val(prec, g.recip_ref());
        let mid = ComplexValue::from_real(&r);
        let rad = ulp_bound(&mid) * 2.0;
        return Ball::new(mid, rad);
    }
    let (num, den, rel) = shifted_parts(z, prec);
    let mid = &den * &(-&num).exp();
    let rad = mid.abs_f64() * rel + ulp_bound(&mid);
    Ball::new(mid.with_prec(prec), rad + ulp_bound(&mid))
}

/// Returns (ln Γ(z+m), ∏_{j<m}(z+j), relative error) with z+m in the Stirling region.
fn shifted_parts(z: &ComplexValue, prec: u32) -> (ComplexValue, ComplexValue, f64) {
    let r = shift_threshold(prec);
    let re = z.re.to_f64();
    let m = if re < r { (r - re).ceil() as u64 } else { 0 };
    let size = z.abs_f64() + m as f64 + 2.0;
    let extra = 16 + (size * (1.0 + size.ln())).log2().ceil().max(0.0) as u32 + (64 - (m + 1).leading_zeros());
    let wp = prec + extra;
    let zw = z.with_prec(wp);
    let mut prod = ComplexValue::one(wp);
    for j in 0..m {
        prod = &prod * &zw.add_f64(j as f64);
    }
    let shifted = zw.add_f64(m as f64);
    let (lg, err) = stirling_ln_gamma(&shifted, wp);
    let rel = err * 1.01 + (m as f64 + 4.0) * 2f64.powi(-(wp as i32) + 3);
    (lg, prod, rel)
}

/// Γ(s) with error relative to |Γ(s)|.
pub fn complex_gamma(s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    let ball = escalate(ctx, 0, true, |p| gamma_ball(&s.with_prec(p.max(s.prec())), p))?;
    let out = ball.with_prec(ctx.working_bits() + ctx.guard_bits());
    Ok(out.into_result())
}

/// 1/Γ(s), an entire function.
pub fn reciprocal_gamma(s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    let ball = escalate(ctx, 0, true, |p| Ok(rgamma_ball(&s.with_prec(p.max(s.prec())), p)))?;
    Ok(ball.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(13), Rational::new());
    }

    #[test]
    fn half_gives_sqrt_pi() {
        let g = complex_gamma(&ComplexValue::from_f64(0.5, 0.0, 128), &ctx()).unwrap();
        let sqrt_pi = Float::with_val(128, Constant::Pi).sqrt();
        assert!((g.value.re - sqrt_pi).abs().to_f64() < 1e-35);
    }

    #[test]
    fn factorial_value() {
        let g = complex_gamma(&ComplexValue::from_f64(5.0, 0.0, 128), &ctx()).unwrap();
        assert!((g.value.re.to_f64() - 24.0).abs() < 1e-30);
    }

    #[test]
    fn complex_argument_against_real_path() {
        // A tiny imaginary part forces the Stirling route; compare with MPFR's real gamma.
        let z = ComplexValue::from_f64(3.7, 1e-30, 160);
        let g = gamma_ball(&z, 160).unwrap();
        let exact = Float::with_val(160, Float::with_val(160, 3.7).gamma_ref());
        let diff = Float::with_val(160, &g.mid.re - &exact).abs().to_f64();
        assert!(diff < 1e-40, "diff {diff}");
        assert!(g.rad < 1e-40);
    }

    #[test]
    fn pole_is_reported() {
        let e = complex_gamma(&ComplexValue::from_f64(-3.0, 0.0, 128), &ctx());
        assert_eq!(e.unwrap_err(), Error::PoleAtNonpositiveInteger(-3));
    }

    #[test]
    fn reciprocal_vanishes_at_poles() {
        let r = rgamma_ball(&ComplexValue::from_f64(-2.0, 0.0, 128), 128);
        assert!(r.mid.is_zero());
    }

    #[test]
    fn reflection_at_point_three() {
        let p = 160;
        let x = Float::with_val(p, 0.3);
        let y = Float::with_val(p, 1 - x.clone());
        let a = gamma_ball(&ComplexValue::from_real(&x), p).unwrap();
        let b = gamma_ball(&ComplexValue::from_real(&y), p).unwrap();
        let prod = a.mul(&b);
        let pi = Float::with_val(p, Constant::Pi);
        let expect = Float::with_val(p, &pi / Float::with_val(p, Float::with_val(p, &pi * &x).sin_ref()));
        assert!((prod.mid.re - expect).abs().to_f64() < 1e-40);
    }

    #[test]
    fn gamma_times_rgamma_is_one_off_axis() {
        let z = ComplexValue::from_f64(-4.3, 12.5, 192);
        let g = gamma_ball(&z, 192).unwrap();
        let r = rgamma_ball(&z, 192);
        let one = g.mul(&r);
        assert!((&one.mid - &ComplexValue::one(192)).abs_f64() < 1e-50);
    }
}
