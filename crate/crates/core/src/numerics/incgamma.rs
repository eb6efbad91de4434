use rug::float::Constant;
use rug::Float;

use super::ball::{ulp_bound, Ball, EvalResult};
use super::complex::ComplexValue;
use super::gamma::gamma_ball;
use super::{escalate, PrecisionContext};
use crate::error::{Error, Result};

fn eps(prec: u32) -> f64 {
    2f64.powi(-(prec as i32))
}

/// M(α, x) = Σ_k x^k / (α(α+1)...(α+k)), so that γ(α, x) = x^α e^{-x} M(α, x).
///
/// Returns the sum with an absolute error bound; the tail bound is rigorous
/// once the term ratio x/|α+k| is below one.
pub(crate) fn lower_scaled_series(alpha: &ComplexValue, x: &Float, prec: u32, cap: usize) -> Result<Ball> {
    if let Some(n) = alpha.as_exact_integer() {
        if n <= 0 {
            return Err(Error::DomainError(format!("lower series undefined at alpha = {n}")));
        }
    }
    let a = alpha.with_prec(prec);
    let xf = x.to_f64();
    let sigma = a.re.to_f64();
    let mut term = a.recip();
    let mut sum = term.clone();
    let mut abs_sum = term.abs_f64();
    let mut round = abs_sum * 8.0;
    if x.is_zero() {
        let rad = ulp_bound(&sum) * 4.0;
        return Ok(Ball::new(sum, rad));
    }
    let xc = ComplexValue::from_real(&Float::with_val(prec, x));
    let mut k = 0usize;
    loop {
        k += 1;
        if k > cap {
            return Err(Error::ConvergenceFailure { what: "incomplete gamma series", iterations: cap });
        }
        let den = a.add_f64(k as f64);
        term = &(&term * &xc) / &den;
        sum = &sum + &term;
        let t = term.abs_f64();
        abs_sum += t;
        round += t * (4.0 * k as f64 + 8.0);
        // remaining terms shrink by at most r per step once sigma + k + 1 > x
        let next_den = sigma + k as f64 + 1.0;
        if next_den > xf {
            let r = xf / next_den;
            if r < 1.0 {
                let tail = t * r / (1.0 - r);
                let scale = sum.abs_f64().max(f64::MIN_POSITIVE);
                if tail <= eps(prec) * scale || tail == 0.0 {
                    let rad = tail + round * eps(prec) + ulp_bound(&sum);
                    let _ = abs_sum;
                    return Ok(Ball::new(sum, rad));
                }
            }
        }
    }
}

/// Evaluator for Γ(α, ·) at a fixed α, caching Γ(α).
pub(crate) struct IncGamma {
    alpha: ComplexValue,
    prec: u32,
    work: u32,
    neg_integer: Option<u64>,
    gamma: Option<Ball>,
}

impl IncGamma {
    pub(crate) fn new(alpha: &ComplexValue, prec: u32) -> Self {
        let neg_integer = alpha.as_exact_integer().filter(|n| *n <= 0).map(|n| (-n) as u64);
        let (m, d) = alpha.nearest_integer();
        let boost = if neg_integer.is_none() && m <= 0 && d < 0.5 && d > 0.0 {
            (-d.log2()).ceil() as u32 + 4
        } else {
            0
        };
        let work = prec + boost + 8;
        IncGamma { alpha: alpha.with_prec(work), prec, work, neg_integer, gamma: None }
    }

    fn cap(&self) -> usize {
        10 * self.prec as usize
    }

    fn gamma_alpha(&mut self) -> Result<Ball> {
        if self.gamma.is_none() {
            self.gamma = Some(gamma_ball(&self.alpha, self.work)?);
        }
        Ok(self.gamma.clone().expect("cached"))
    }

    /// Γ(α, x) for x > 0.
    pub(crate) fn eval(&mut self, x: &Float) -> Result<Ball> {
        if !(x.is_finite() && *x > 0) {
            return Err(Error::DomainError("incomplete gamma needs x > 0".into()));
        }
        let x = Float::with_val(self.work, x);
        let series_region = x.to_f64() < self.alpha.abs_f64() + 4.0;
        let out = if !series_region {
            self.continued_fraction(&x)?
        } else if let Some(m) = self.neg_integer {
            self.negative_integer(m, &x)?
        } else {
            let g = self.gamma_alpha()?;
            let m = lower_scaled_series(&self.alpha, &x, self.work, self.cap())?;
            let pref = self.prefactor(&x);
            g.sub(&pref.mul(&m))
        };
        Ok(out.with_prec(self.prec))
    }

    /// x^α e^{-x}
    fn prefactor(&self, x: &Float) -> Ball {
        let lx = Float::with_val(self.work, x.ln_ref());
        let e = &self.alpha.scale(&lx) - &ComplexValue::from_real(x);
        let mid = e.exp();
        let err = (self.alpha.abs_f64() * lx.to_f64().abs() + x.to_f64() + 1.0) * eps(self.work) * 4.0;
        let rad = mid.abs_f64() * err + ulp_bound(&mid);
        Ball::new(mid, rad)
    }

    /// Legendre continued fraction, modified Lentz.
    fn continued_fraction(&self, x: &Float) -> Result<Ball> {
        let p = self.work;
        let tiny = Float::with_val(p, Float::i_exp(1, -(2 * p as i32) - 64));
        let fix = |v: ComplexValue| -> ComplexValue {
            if v.abs() < tiny {
                ComplexValue::from_real(&tiny)
            } else {
                v
            }
        };
        let a = &self.alpha;
        let xc = ComplexValue::from_real(x);
        let mut b = (&xc - a).add_f64(1.0);
        let mut c = ComplexValue::from_real(&Float::with_val(p, tiny.recip_ref()));
        let mut d = fix(b.clone()).recip();
        let mut h = d.clone();
        let mut i = 0usize;
        let last_delta;
        loop {
            i += 1;
            if i > self.cap() {
                return Err(Error::ConvergenceFailure { what: "incomplete gamma continued fraction", iterations: self.cap() });
            }
            // a_i = -i (i - α)
            let an = (-a).add_f64(i as f64).scale_f64(-(i as f64));
            b = b.add_f64(2.0);
            d = fix(&(&an * &d) + &b).recip();
            c = fix(&b + &(&an / &c));
            let del = &d * &c;
            h = &h * &del;
            let delta = del.add_f64(-1.0).abs_f64();
            if delta < eps(p) {
                last_delta = delta;
                break;
            }
        }
        let pref = self.prefactor(x);
        let hm = h.abs_f64();
        let h_rad = hm * (last_delta * 4.0 + (i as f64 + 4.0) * 16.0 * eps(p));
        Ok(pref.mul(&Ball::new(h, h_rad)))
    }

    /// Γ(-m, x) through the exponential integral, all real.
    fn negative_integer(&self, m: u64, x: &Float) -> Result<Ball> {
        let p = self.work;
        let xf = x.to_f64();
        // E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k k!)
        let euler = Float::with_val(p, Constant::Euler);
        let lnx = Float::with_val(p, x.ln_ref());
        let mut s = Float::new(p);
        let mut pow = Float::with_val(p, 1);
        let mut abs_sum = 0.0;
        let mut k = 0u64;
        let tail;
        loop {
            k += 1;
            if k as usize > self.cap() {
                return Err(Error::ConvergenceFailure { what: "exponential integral series", iterations: self.cap() });
            }
            pow *= -x.clone();
            pow /= k;
            let term = Float::with_val(p, &pow / k);
            abs_sum += term.to_f64().abs();
            s += &term;
            let next = term.to_f64().abs() * xf / (k as f64 + 1.0);
            if (k as f64) > xf && next < eps(p) {
                tail = next;
                break;
            }
        }
        let e1 = Float::with_val(p, -(euler + &lnx) - &s);
        let e1_err = tail + (abs_sum + lnx.to_f64().abs() + 1.0) * (k as f64 + 4.0) * eps(p);
        // e^{-x} Σ_{k<m} (-1)^k k! / x^{k+1}
        let mut fin = Float::new(p);
        let mut fact = Float::with_val(p, 1);
        let mut xp = Float::with_val(p, x);
        let mut fin_abs = 0.0;
        for j in 0..m {
            if j > 0 {
                fact *= j;
                xp *= x;
            }
            let t = Float::with_val(p, &fact / &xp);
            fin_abs += t.to_f64().abs();
            if j % 2 == 0 {
                fin += t;
            } else {
                fin -= t;
            }
        }
        let ex = Float::with_val(p, (-x.clone()).exp_ref());
        fin *= &ex;
        let mut mfact = Float::with_val(p, 1);
        for j in 1..=m {
            mfact *= j;
        }
        let mut val = Float::with_val(p, &e1 - &fin) / &mfact;
        if m % 2 == 1 {
            val = -val;
        }
        let err = (e1_err + fin_abs * ex.to_f64() * (m as f64 + 4.0) * eps(p)) / mfact.to_f64();
        let mid = ComplexValue::from_real(&val);
        let rad = err + ulp_bound(&mid) * 2.0;
        Ok(Ball::new(mid, rad))
    }
}

/// One-shot Γ(α, x) at `prec` bits.
pub(crate) fn inc_gamma_ball(alpha: &ComplexValue, x: &Float, prec: u32) -> Result<Ball> {
    IncGamma::new(alpha, prec).eval(x)
}

/// Upper incomplete gamma Γ(α, x) = ∫_x^∞ e^{-t} t^{α-1} dt for x > 0.
pub fn upper_incomplete_gamma(alpha: &ComplexValue, x: &Float, ctx: &PrecisionContext) -> Result<EvalResult> {
    let ball = escalate(ctx, 0, false, |p| inc_gamma_ball(&alpha.with_prec(p.max(alpha.prec())), x, p))?;
    Ok(ball.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}
