use rug::float::Constant;
use rug::Float;

use super::ball::{Ball, EvalResult};
use super::complex::ComplexValue;
use super::gamma::{gamma_ball, rgamma_ball};
use super::{escalate, PrecisionContext};
use crate::error::{Error, PoleOrZeroKind, Result};

/// Parity label: `Plus` is k = 0 (even), `Minus` is k = 1 (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn k(self) -> u32 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn from_k(k: u32) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// w₊ = 1, w₋ = i.
    pub fn root_number(self, prec: u32) -> ComplexValue {
        match self {
            Sign::Plus => ComplexValue::one(prec),
            Sign::Minus => ComplexValue::i(prec),
        }
    }
}

/// γ±(s) at `prec` bits.
pub(crate) fn tate_ball(sign: Sign, s: &ComplexValue, prec: u32) -> Result<Ball> {
    let k = sign.k() as f64;
    let s = s.with_prec(prec);
    let num_arg = s.add_f64(k).scale_f64(0.5);
    let den_arg = (-&s).add_f64(1.0 + k).scale_f64(0.5);
    if num_arg.as_exact_integer().map_or(false, |n| n <= 0) {
        return Err(Error::PoleOrZero { kind: PoleOrZeroKind::Pole, at: s.to_string() });
    }
    if den_arg.as_exact_integer().map_or(false, |n| n <= 0) {
        return Err(Error::PoleOrZero { kind: PoleOrZeroKind::Zero, at: s.to_string() });
    }
    let pi = Float::with_val(prec, Constant::Pi);
    let lpi = Float::with_val(prec, pi.ln_ref());
    // π^{(1-2s)/2}
    let e = (-&s).add_f64(0.5);
    let pw = e.scale(&lpi).exp();
    let pw_rad = pw.abs_f64() * (e.abs_f64() + 1.0) * 2f64.powi(-(prec as i32) + 3);
    let g = gamma_ball(&num_arg, prec)?;
    let r = rgamma_ball(&den_arg, prec);
    Ok(Ball::new(pw, pw_rad).mul(&g).mul(&r))
}

/// Tate gamma factor γ±(s).
pub fn tate_gamma(sign: Sign, s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    let b = escalate(ctx, 0, true, |p| tate_ball(sign, s, p))?;
    Ok(b.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}
