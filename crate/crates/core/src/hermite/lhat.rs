//! The generalized completed functions L̂_n attached to φ_n.

use rug::float::Constant;
use rug::Float;

use super::poly::{poly_family, Family};
use crate::error::{Error, Result};
use crate::lerch::{lhat_star, turn, LerchPoint, Param, Residual};
use crate::numerics::{Ball, ComplexValue, EvalResult, PrecisionContext, Sign};
use crate::zeta_integral::{f_k, TestFunction};

fn family_of(n: u32) -> (Family, Sign, u32) {
    if n % 2 == 0 {
        (Family::P, Sign::Plus, n / 2)
    } else {
        (Family::Q, Sign::Minus, n / 2)
    }
}

fn check_square(a: &Param, c: &Param) -> Result<()> {
    if a.in_open_unit_interval() && c.in_open_unit_interval() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("L̂_n needs 0 < a, c < 1, got a = {a}, c = {c}")))
    }
}

/// L̂_n(s, a, c) = p_m(s) L̂⁺(s, a, c) for n = 2m and q_m(s) L̂⁻(s, a, c) for n = 2m + 1.
///
/// Normalized so that L̂_0 = L̂⁺; the zeta integral of φ_n differs from this by
/// the constant `raising_constant(n)`.
pub fn lhat_n(n: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    check_square(a, c)?;
    let (family, sign, m) = family_of(n);
    let poly = poly_family(family, m);
    let size = poly.abs_bound(s.abs_f64()).max(1.0);
    let extra = size.log2().ceil() as u32;
    let inner = PrecisionContext::new(ctx.working_bits() + extra, ctx.guard_bits())?;
    let base = lhat_star(sign, &LerchPoint::new(s.clone(), a.clone(), c.clone()), &inner)?;
    let prec = inner.internal_bits();
    let pv = poly.eval(&s.with_prec(prec));
    let rounding = size * 2f64.powi(-(prec as i32) + poly.coefficients().len() as i32 + 2);
    let out = Ball::new(pv, rounding).mul(&base.ball());
    Ok(out.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

/// κ_n with e^{-πiac} F_{n mod 2}(φ_n; s, a, c) = κ_n L̂_n(s, a, c):
/// 1 for n = 0, 2 for other even n and 2√(2π) for odd n.
pub fn raising_constant(n: u32, prec: u32) -> Float {
    match n {
        0 => Float::with_val(prec, 1),
        _ if n % 2 == 0 => Float::with_val(prec, 2),
        _ => Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32).sqrt() * 2u32,
    }
}

/// e^{-πiac} F_{n mod 2}(φ_n; s, a, c) from the zeta-integral quadrature.
pub fn lhat_n_quadrature(n: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    check_square(a, c)?;
    let r = f_k(&TestFunction::hermite(n), n % 2, s, a, c, ctx)?;
    let prec = r.value.prec();
    let phase = turn(&a.mul(c).mul(&Param::ratio(-1, 2)), prec);
    Ok(r.ball().mul_value(&phase).into_result())
}

/// |L̂_n(s, a, c) - i^n e^{-2πiac} L̂_n(1 - s, 1 - c, a)|.
pub fn lhat_n_fe_residual(n: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<Residual> {
    let lhs = lhat_n(n, s, a, c, ctx)?;
    let w = (-s).add_f64(1.0);
    let rhs = lhat_n(n, &w, &c.one_minus(), a, ctx)?;
    let prec = lhs.value.prec();
    let mut factor = turn(&a.mul(c).neg(), prec);
    for _ in 0..n % 4 {
        factor = factor.mul_i();
    }
    Ok(Residual::between(&lhs, &rhs.ball().mul_value(&factor)))
}
