//! Behaviour of the Lerch functions at the edges of the unit square: the
//! correction terms S±, the renormalized functions L^{R,±} = L± - S±, limit
//! probes along approaches to the boundary, and L^p growth diagnostics.

mod extrapolate;
mod lp;
mod probe;

use rug::Float;

use crate::error::{Error, Result};
use crate::lerch::engine::{LatticeSums, Mode};
use crate::lerch::{escalate_grid, extra_bits_for, finish, gfactor, turn, zeta_star, LerchPoint, Param, Residual};
use crate::numerics::{escalate, imaginary_part_bits, tate_ball, ulp_bound, Ball, ComplexValue, EvalResult, PrecisionContext, Sign};

pub use extrapolate::extrapolate_to_zero;
pub use lp::{lp_diagnostic, predicted_lp_member, LpGrowth, LpMember, LpReport};
pub use probe::{
    boundary_limit_probe, continuity_classifier, continuity_probe, edge_jump, BoundaryPart, BoundaryTarget, Continuity, Corner, Edge,
    JumpReport, ProbeConfig, ProbeReport, ProbeVerdict,
};

pub(crate) fn reject_integer_s(s: &ComplexValue) -> Result<()> {
    match s.as_exact_integer() {
        Some(n) => Err(Error::IntegerSRejected(n)),
        None => Ok(()),
    }
}

/// t^w for t > 0 as a ball.
pub(crate) fn real_power(t: &Float, w: &ComplexValue, prec: u32) -> Ball {
    let lt = Float::with_val(prec, t.ln_ref());
    let v = ComplexValue::pow_from_ln(&lt, w);
    let rad = v.abs_f64() * (w.abs_f64() * lt.to_f64().abs() + 2.0) * 2f64.powi(-(prec as i32) + 2);
    Ball::new(v, rad)
}

fn phase_ball(r: &Param, prec: u32) -> Ball {
    let v = turn(r, prec);
    let rad = ulp_bound(&v) * 4.0;
    Ball::new(v, rad)
}

/// The four summands of S±(s, a, c), kept apart.
#[derive(Debug, Clone)]
pub struct CorrectionTerm {
    /// c^{-s}
    pub c_power: Ball,
    /// ± e^{-2πia} (1-c)^{-s}
    pub c_reflected: Ball,
    /// i^k γ±(1-s) e^{-2πiac} a^{s-1}
    pub a_power: Ball,
    /// ± i^k γ±(1-s) e^{2πi(1-a)c} (1-a)^{s-1}
    pub a_reflected: Ball,
}

impl CorrectionTerm {
    pub fn total(&self) -> Ball {
        self.c_power.add(&self.c_reflected).add(&self.a_power).add(&self.a_reflected)
    }

    fn with_prec(&self, prec: u32) -> CorrectionTerm {
        CorrectionTerm {
            c_power: self.c_power.with_prec(prec),
            c_reflected: self.c_reflected.with_prec(prec),
            a_power: self.a_power.with_prec(prec),
            a_reflected: self.a_reflected.with_prec(prec),
        }
    }
}

fn check_open_square(a: &Param, c: &Param) -> Result<()> {
    if !a.in_open_unit_interval() || !c.in_open_unit_interval() {
        return Err(Error::DomainError(format!("correction terms need (a, c) in (0,1)², got ({a}, {c})")));
    }
    Ok(())
}

fn correction_at_prec(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, prec: u32) -> Result<CorrectionTerm> {
    let s = s.with_prec(prec);
    let eps = if sign == Sign::Plus { 1.0 } else { -1.0 };
    let af = a.to_float(prec);
    let cf = c.to_float(prec);
    let one_a = Float::with_val(prec, 1u32 - &af);
    let one_c = Float::with_val(prec, 1u32 - &cf);
    let neg_s = -&s;
    let s_m1 = s.add_f64(-1.0);

    let c_power = real_power(&cf, &neg_s, prec);
    let c_reflected = real_power(&one_c, &neg_s, prec)
        .mul(&phase_ball(&a.neg(), prec))
        .scale(&Float::with_val(prec, eps));

    let gamma = tate_ball(sign, &(-&s).add_f64(1.0), prec)?;
    let weight = match sign {
        Sign::Plus => gamma,
        Sign::Minus => gamma.mul_i(),
    };
    let a_power = weight.mul(&phase_ball(&a.mul(c).neg(), prec)).mul(&real_power(&af, &s_m1, prec));
    let a_reflected = weight
        .mul(&phase_ball(&a.one_minus().mul(c), prec))
        .mul(&real_power(&one_a, &s_m1, prec))
        .scale(&Float::with_val(prec, eps));
    Ok(CorrectionTerm { c_power, c_reflected, a_power, a_reflected })
}

fn start_bits(s: &ComplexValue) -> u32 {
    imaginary_part_bits(s) + extra_bits_for(s)
}

/// S±(s, a, c) split into its four summands, for s ∉ Z and (a, c) in (0,1)².
pub fn correction_terms(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<CorrectionTerm> {
    reject_integer_s(s)?;
    check_open_square(a, c)?;
    let mut last = None;
    escalate(ctx, start_bits(s), false, |prec| {
        let t = correction_at_prec(sign, s, a, c, prec)?;
        let total = t.total();
        last = Some(t);
        Ok(total)
    })?;
    let out_prec = ctx.working_bits() + ctx.guard_bits();
    Ok(last.expect("at least one evaluation").with_prec(out_prec))
}

/// S±(s, a, c): the four terms whose removal makes L± continuous on the closed square.
pub fn correction(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    reject_integer_s(s)?;
    check_open_square(a, c)?;
    let b = escalate(ctx, start_bits(s), false, |prec| Ok(correction_at_prec(sign, s, a, c, prec)?.total()))?;
    Ok(b.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

/// Completed correction Ŝ± = π^{-(s+k)/2} Γ((s+k)/2) S±.
pub fn completed_correction(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    reject_integer_s(s)?;
    check_open_square(a, c)?;
    let b = escalate(ctx, start_bits(s), false, |prec| {
        let sp = s.with_prec(prec);
        let t = correction_at_prec(sign, &sp, a, c, prec)?.total();
        Ok(t.div(&gfactor(sign, &sp, prec)))
    })?;
    Ok(b.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

/// |Ŝ±(s,a,c) - i^k e^{-2πiac} Ŝ±(1-s, 1-c, a)|.
pub fn correction_fe_residual(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<Residual> {
    let prec = ctx.internal_bits();
    let lhs = completed_correction(sign, s, a, c, ctx)?;
    let rhs = completed_correction(sign, &(-s).add_f64(1.0), &c.one_minus(), a, ctx)?;
    let mut factor = turn(&a.mul(c).neg(), prec);
    if sign == Sign::Minus {
        factor = factor.mul_i();
    }
    Ok(Residual::between(&lhs, &rhs.ball().mul_value(&factor)))
}

fn check_closed_square(vals: &[Param], what: &str) -> Result<()> {
    match vals.iter().find(|v| !v.in_closed_unit_interval()) {
        Some(v) => Err(Error::DomainError(format!("renormalized functions need {what} in [0, 1], got {v}"))),
        None => Ok(()),
    }
}

fn renorm_grid(
    sign: Sign,
    s: &ComplexValue,
    a_vals: &[Param],
    c_vals: &[Param],
    completed: bool,
    ctx: &PrecisionContext,
) -> Result<Vec<EvalResult>> {
    reject_integer_s(s)?;
    check_closed_square(a_vals, "a")?;
    check_closed_square(c_vals, "c")?;
    let vals = escalate_grid(ctx, ctx.internal_bits() + start_bits(s), |prec| {
        let sp = s.with_prec(prec);
        let mut ls = LatticeSums::new(sign, &sp, prec, ctx.working_bits(), ctx.guard_bits());
        let hat = ls.grid(a_vals, c_vals, Mode::Renormalized)?;
        let g = (!completed).then(|| gfactor(sign, &sp, prec));
        Ok(hat
            .into_iter()
            .map(|b| (g.as_ref().map_or(b.clone(), |g| g.mul(&b)), None))
            .collect())
    })?;
    Ok(finish(vals, ctx))
}

/// L̂^{R,±} over the tensor grid a_vals × c_vals (c outer, a inner), all in [0, 1].
pub fn renorm_lhat_grid(sign: Sign, s: &ComplexValue, a_vals: &[Param], c_vals: &[Param], ctx: &PrecisionContext) -> Result<Vec<EvalResult>> {
    renorm_grid(sign, s, a_vals, c_vals, true, ctx)
}

/// L^{R,±} over the tensor grid a_vals × c_vals (c outer, a inner), all in [0, 1].
pub fn renorm_l_grid(sign: Sign, s: &ComplexValue, a_vals: &[Param], c_vals: &[Param], ctx: &PrecisionContext) -> Result<Vec<EvalResult>> {
    renorm_grid(sign, s, a_vals, c_vals, false, ctx)
}

/// L^{R,±}(s, a, c) on the closed unit square, s ∉ Z.
///
/// The bad terms are replaced by their regular parts inside the lattice sums,
/// so edge and corner values come out of the same formula as interior ones.
pub fn renorm_l(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    Ok(renorm_l_grid(sign, s, std::slice::from_ref(a), std::slice::from_ref(c), ctx)?.remove(0))
}

/// L̂^{R,±}(s, a, c) = π^{-(s+k)/2} Γ((s+k)/2) L^{R,±}(s, a, c).
pub fn renorm_lhat(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    Ok(renorm_lhat_grid(sign, s, std::slice::from_ref(a), std::slice::from_ref(c), ctx)?.remove(0))
}

/// |L̂^{R,±}(s,a,c) - w± e^{-2πiac} L̂^{R,±}(1-s, 1-c, a)| with w₊ = 1, w₋ = i.
pub fn renorm_fe_residual(sign: Sign, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<Residual> {
    let prec = ctx.internal_bits();
    let lhs = renorm_lhat(sign, s, a, c, ctx)?;
    let rhs = renorm_lhat(sign, &(-s).add_f64(1.0), &c.one_minus(), a, ctx)?;
    let factor = &turn(&a.mul(c).neg(), prec) * &sign.root_number(prec);
    Ok(Residual::between(&lhs, &rhs.ball().mul_value(&factor)))
}

/// Closed form at the corner (0, 0):
/// L^{R,+}(s,0,0) = 2ζ(s) - 1 - γ⁺(1-s) and L^{R,-}(s,0,0) = 1 + iγ⁻(1-s).
pub fn renorm_corner_value(sign: Sign, s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    reject_integer_s(s)?;
    let zeta = match sign {
        Sign::Plus => Some(zeta_star(&LerchPoint::new(s.clone(), Param::int(0), Param::int(0)), ctx)?.ball()),
        Sign::Minus => None,
    };
    let b = escalate(ctx, start_bits(s), false, |prec| {
        let sp = s.with_prec(prec);
        let g = tate_ball(sign, &(-&sp).add_f64(1.0), prec)?;
        Ok(match sign {
            Sign::Plus => {
                let z = zeta.as_ref().expect("zeta value").with_prec(prec);
                z.scale(&Float::with_val(prec, 2)).sub(&Ball::one(prec)).sub(&g)
            }
            Sign::Minus => Ball::one(prec).add(&g.mul_i()),
        })
    })?;
    let zeta_err = zeta.map_or(0.0, |z| 2.0 * z.rad);
    Ok(b.inflate(zeta_err).with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}
