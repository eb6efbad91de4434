//! Incomplete-gamma lattice sums behind the completed functions.
//!
//! For shift u, side sums have the form Σ_n phase_n · sgn(t)^k |t|^e Γ(α, π t²)
//! with t = n + u. A whole grid of (a, c) values shares the per-c and per-a
//! tables; only the phases differ between grid points.

use rug::float::Constant;
use rug::Float;

use super::param::{turn, Param};
use crate::error::{Error, Result};
use crate::numerics::{lower_scaled_series, ulp_bound, Ball, ComplexValue, IncGamma, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Exclude t = 0 terms; pole terms are added by the caller.
    Standard,
    /// Replace the four terms nearest the square's edges by their regular parts.
    Renormalized,
}

struct Family {
    alpha: ComplexValue,
    expo: ComplexValue,
    odd: bool,
    /// π^{-α}
    pi_neg_alpha: Ball,
    /// π^{α}
    pi_alpha: ComplexValue,
    ig: IncGamma,
}

impl Family {
    fn new(alpha: ComplexValue, expo: ComplexValue, odd: bool, prec: u32) -> Self {
        let lpi = Float::with_val(prec, Float::with_val(prec, Constant::Pi).ln_ref());
        let pa = alpha.scale(&lpi);
        let pi_alpha = pa.exp();
        let pn = (-&pa).exp();
        let rad = pn.abs_f64() * (alpha.abs_f64() * 1.2 + 1.0) * 2f64.powi(-(prec as i32) + 3);
        let ig = IncGamma::new(&alpha, prec);
        Family { alpha, expo, odd, pi_neg_alpha: Ball::new(pn, rad), pi_alpha, ig }
    }
}

struct SideTable {
    n_lo: i64,
    terms: Vec<Option<Ball>>,
    /// Bound on the omitted terms, already multiplied by |π^{-α}|.
    tail: f64,
}

pub(crate) struct LatticeSums {
    prec: u32,
    base_n: i64,
    c_side: Family,
    a_side: Family,
    /// 1 for the even case, -i for the odd case.
    a_factor: ComplexValue,
}

/// Upper bound for |t|^{e} Γ(σ, π t²) summed over |t| ≥ t0 on both sides.
fn tail_bound(sigma: f64, e: f64, t0: f64) -> f64 {
    let one = |t: f64| -> f64 {
        let x = std::f64::consts::PI * t * t;
        let k = if sigma > 1.0 { 1.0 / (1.0 - (sigma - 1.0) / x).max(1e-3) } else { 1.0 };
        (e * t.ln() + (sigma - 1.0) * x.ln() - x).exp() * k
    };
    let growth = (e + 2.0 * sigma - 2.0).max(0.0);
    let q = (-std::f64::consts::PI * (2.0 * t0 + 1.0)).exp() * ((t0 + 1.0) / t0).powf(growth);
    2.0 * one(t0) / (1.0 - q.min(0.5))
}

impl LatticeSums {
    pub(crate) fn new(sign: Sign, s: &ComplexValue, prec: u32, working_bits: u32, guard_bits: u32) -> Self {
        let s = s.with_prec(prec);
        let one_minus_s = (-&s).add_f64(1.0);
        let (c_side, a_side, a_factor) = match sign {
            Sign::Plus => (
                Family::new(s.scale_f64(0.5), -&s, false, prec),
                Family::new(one_minus_s.scale_f64(0.5), s.add_f64(-1.0), false, prec),
                ComplexValue::one(prec),
            ),
            Sign::Minus => (
                Family::new(s.add_f64(1.0).scale_f64(0.5), -&s, true, prec),
                Family::new(one_minus_s.add_f64(1.0).scale_f64(0.5), s.add_f64(-1.0), true, prec),
                ComplexValue::from_f64(0.0, -1.0, prec),
            ),
        };
        let base = ((working_bits as f64 * std::f64::consts::LN_2 + guard_bits as f64) / std::f64::consts::PI)
            .sqrt()
            .ceil() as i64;
        LatticeSums { prec, base_n: base + 4, c_side, a_side, a_factor }
    }

    fn side(fam: &mut Family, u: &Param, base_n: i64, bad: &[i64], prec: u32) -> Result<SideTable> {
        let center = -u.to_f64().round() as i64;
        let uabs = u.to_f64().abs().ceil() as i64;
        let sigma = fam.alpha.re.to_f64();
        let e = fam.expo.re.to_f64();
        let scale = fam.pi_neg_alpha.mid.abs_f64();
        let goal = 2f64.powi(-(prec as i32) + 2);
        // base cut, extended until the analytic tail is negligible
        let mut half = base_n + uabs.min(1);
        loop {
            let t0 = (half as f64 - 0.5).max(1.0);
            if tail_bound(sigma, e, t0) * scale <= goal || half > 4 * base_n + 64 {
                break;
            }
            half += 1;
        }
        let t0 = (half as f64 - 0.5).max(1.0);
        let tail = tail_bound(sigma, e, t0) * scale;
        let n_lo = center - half;
        let n_hi = center + half;
        let pi = Float::with_val(prec, Constant::Pi);
        let mut terms = Vec::with_capacity((n_hi - n_lo + 1) as usize);
        for n in n_lo..=n_hi {
            let t = u.add_int(n);
            let is_bad = bad.contains(&n);
            if t.is_zero() && !is_bad {
                if !t.is_rational() {
                    return Err(Error::DomainError(
                        "a real-typed parameter lies exactly on an integer; pass it as a rational to select the integer case".into(),
                    ));
                }
                terms.push(None);
                continue;
            }
            let tf = t.to_float(prec);
            let neg = tf.is_sign_negative();
            let at = Float::with_val(prec, tf.abs_ref());
            let x = Float::with_val(prec, &pi * Float::with_val(prec, at.square_ref()));
            let term = if is_bad {
                // -π^{α} sgn^k |t|^k e^{-πt²} M(α, πt²)
                let m = lower_scaled_series(&fam.alpha, &x, prec, 10 * prec as usize)?;
                let ex = Float::with_val(prec, (-x.clone()).exp_ref());
                let mut factor = fam.pi_alpha.scale(&ex);
                if fam.odd {
                    factor = factor.scale(&at);
                    if neg {
                        factor = -&factor;
                    }
                }
                let fb = Ball::new(factor.clone(), ulp_bound(&factor) * 8.0);
                m.mul(&fb).neg()
            } else {
                let g = fam.ig.eval(&x)?;
                let lt = Float::with_val(prec, at.ln_ref());
                let mut pw = fam.expo.scale(&lt).exp();
                let rel = (fam.expo.abs_f64() * lt.to_f64().abs() + 2.0) * 2f64.powi(-(prec as i32) + 2);
                if fam.odd && neg {
                    pw = -&pw;
                }
                let pr = pw.abs_f64() * rel;
                g.mul(&Ball::new(pw, pr))
            };
            terms.push(Some(term));
        }
        Ok(SideTable { n_lo, terms, tail })
    }

    /// Regular part of the completed function at every (a_i, c_j), c outer.
    ///
    /// In `Standard` mode the inputs are the shifts used in the sums (reduced
    /// or not); in `Renormalized` mode they must lie in [0, 1].
    pub(crate) fn grid(&mut self, a_vals: &[Param], c_vals: &[Param], mode: Mode) -> Result<Vec<Ball>> {
        let prec = self.prec;
        let (c_bad, a_bad): (&[i64], &[i64]) = match mode {
            Mode::Standard => (&[], &[]),
            Mode::Renormalized => (&[0, -1], &[0, 1]),
        };
        let mut c_tabs = Vec::with_capacity(c_vals.len());
        for c in c_vals {
            c_tabs.push(Self::side(&mut self.c_side, c, self.base_n, c_bad, prec)?);
        }
        let mut a_tabs = Vec::with_capacity(a_vals.len());
        for a in a_vals {
            a_tabs.push(Self::side(&mut self.a_side, &a.neg(), self.base_n, a_bad, prec)?);
        }
        let mut out = Vec::with_capacity(a_vals.len() * c_vals.len());
        for (c, ct) in c_vals.iter().zip(&c_tabs) {
            // e^{2πi c n} for the a-side
            let c_turns: Vec<Vec<ComplexValue>> = a_tabs
                .iter()
                .map(|at| (0..at.terms.len()).map(|k| turn(&c.mul_int(at.n_lo + k as i64), prec)).collect())
                .collect();
            for ((a, at), cturn) in a_vals.iter().zip(&a_tabs).zip(&c_turns) {
                let mut sc = Ball::zero(prec);
                for (k, term) in ct.terms.iter().enumerate() {
                    if let Some(v) = term {
                        let ph = turn(&a.mul_int(ct.n_lo + k as i64), prec);
                        sc = sc.add(&v.mul_value(&ph).inflate(v.abs_upper() * 2f64.powi(-(prec as i32) + 2)));
                    }
                }
                let mut sa = Ball::zero(prec);
                for (k, term) in at.terms.iter().enumerate() {
                    if let Some(v) = term {
                        sa = sa.add(&v.mul_value(&cturn[k]).inflate(v.abs_upper() * 2f64.powi(-(prec as i32) + 2)));
                    }
                }
                let shift = turn(&c.mul(a).neg(), prec);
                let sa = sa.mul_value(&shift).mul_value(&self.a_factor);
                let total = self.c_side.pi_neg_alpha.mul(&sc).add(&self.a_side.pi_neg_alpha.mul(&sa));
                out.push(total.inflate(ct.tail + at.tail));
            }
        }
        Ok(out)
    }
}
