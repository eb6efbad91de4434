use rug::Float;

use super::{turn, LerchPoint};
use crate::error::{Error, Result};
use crate::numerics::{Ball, ComplexValue, EvalResult, PrecisionContext};

/// Default number of Dirichlet terms summed before the tail bound takes over.
pub const DEFAULT_DIRICHLET_TERMS: usize = 8192;

const MARGIN: f64 = 0.1;

/// Σ_{n+c>0} e^{2πina}(n+c)^{-s} truncated after `DEFAULT_DIRICHLET_TERMS` terms.
pub fn dirichlet_zeta_star(p: &LerchPoint, ctx: &PrecisionContext) -> Result<EvalResult> {
    dirichlet_zeta_star_terms(p, ctx, DEFAULT_DIRICHLET_TERMS)
}

/// Partial Dirichlet sum with `terms` terms; the tail is bounded by the smaller of
/// the integral comparison and (for a ∉ Z) the Abel summation bound.
pub fn dirichlet_zeta_star_terms(p: &LerchPoint, ctx: &PrecisionContext, terms: usize) -> Result<EvalResult> {
    let sigma = p.s.re.to_f64();
    if sigma <= 1.0 + MARGIN {
        return Err(Error::DomainError(format!("Dirichlet series needs Re s > {}, got {sigma}", 1.0 + MARGIN)));
    }
    let terms = terms.max(1);
    let prec = ctx.internal_bits() + (terms as f64).log2().ceil() as u32 + 8;
    let s = p.s.with_prec(prec);
    let neg_s = -&s;
    // smallest n with n + c > 0
    let n0 = {
        let f = p.c.floor();
        let f = f.to_i64().ok_or_else(|| Error::DomainError("c out of range".into()))?;
        -f + if p.c.is_integer() { 1 } else { 0 }
    };
    let n0 = if p.c.add_int(n0).cmp_int(0).is_gt() { n0 } else { n0 + 1 };
    let mut acc = ComplexValue::zero(prec);
    let mut round = 0.0;
    for k in 0..terms as i64 {
        let n = n0 + k;
        let t = p.c.add_int(n).to_float(prec);
        let lt = Float::with_val(prec, t.ln_ref());
        let v = ComplexValue::pow_from_ln(&lt, &neg_s);
        let ph = turn(&p.a.mul_int(n), prec);
        let term = &v * &ph;
        round += term.abs_f64() * (s.abs_f64() * lt.to_f64().abs() + 6.0);
        acc = &acc + &term;
    }
    let t_m = p.c.add_int(n0 + terms as i64).to_f64();
    let head = t_m.powf(-sigma);
    let integral = head + t_m.powf(1.0 - sigma) / (sigma - 1.0);
    let abel = if p.a.is_integer() {
        f64::INFINITY
    } else {
        let sin = (std::f64::consts::PI * p.a.frac().to_f64()).sin().abs();
        if sin > 0.0 {
            p.s.abs_f64() * head / sigma / sin * (1.0 + 1e-12)
        } else {
            f64::INFINITY
        }
    };
    let tail = integral.min(abel) * (1.0 + 1e-12);
    let rad = tail + (round + acc.abs_f64() * terms as f64) * 2f64.powi(-(prec as i32) + 2);
    let out_prec = ctx.working_bits() + ctx.guard_bits();
    Ok(Ball::new(acc, rad).with_prec(out_prec).into_result())
}

