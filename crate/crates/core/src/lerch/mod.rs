//! The Lerch zeta function, its completions L̂±, and the extension ζ* to all real (a, c).

mod dirichlet;
pub(crate) mod engine;
mod param;

use std::fmt;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{gamma_ball, imaginary_part_bits, rgamma_ball, Ball, ComplexValue, EvalResult, Pole, PrecisionContext, Sign};
use engine::{LatticeSums, Mode};

pub use dirichlet::{dirichlet_zeta_star, dirichlet_zeta_star_terms, DEFAULT_DIRICHLET_TERMS};
pub use param::{turn, Param};

/// Where (a, c) sits relative to the closed unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Interior,
    Edge,
    Corner,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LerchPoint {
    pub s: ComplexValue,
    pub a: Param,
    pub c: Param,
}

impl LerchPoint {
    pub fn new(s: ComplexValue, a: Param, c: Param) -> Self {
        LerchPoint { s, a, c }
    }

    pub fn a_is_integer(&self) -> bool {
        self.a.is_integer()
    }

    pub fn c_is_integer(&self) -> bool {
        self.c.is_integer()
    }

    pub fn domain(&self) -> Domain {
        if !self.a.in_closed_unit_interval() || !self.c.in_closed_unit_interval() {
            return Domain::General;
        }
        let a_edge = !self.a.in_open_unit_interval();
        let c_edge = !self.c.in_open_unit_interval();
        match (a_edge, c_edge) {
            (true, true) => Domain::Corner,
            (false, false) => Domain::Interior,
            _ => Domain::Edge,
        }
    }
}

/// Reduction of (a, c) to [0,1)² with the unit-modulus factor it costs.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionRecord {
    pub a0: Param,
    pub c0: Param,
    pub phase: ComplexValue,
    pub shifts: (Integer, Integer),
}

fn shift_phase(a0: &Param, kc: &Integer, prec: u32) -> ComplexValue {
    let k = Param::from(Rational::from(kc.clone()));
    turn(&a0.mul(&k).neg(), prec)
}

/// a0 = a mod 1, c0 = c mod 1 and phase e^{-2πi a0 (c - c0)}.
pub fn reduce_fundamental(p: &LerchPoint) -> ReductionRecord {
    let prec = p.s.prec().max(64);
    let ka = p.a.floor();
    let kc = p.c.floor();
    let a0 = p.a.frac();
    let c0 = p.c.frac();
    let phase = shift_phase(&a0, &kc, prec);
    ReductionRecord { a0, c0, phase, shifts: (ka, kc) }
}

/// Which completed function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LerchFunction {
    /// L̂⁺*
    LhatPlus,
    /// L̂⁻*
    LhatMinus,
    /// L⁺*
    LPlus,
    /// L⁻*
    LMinus,
    /// ζ*
    ZetaStar,
}

impl LerchFunction {
    pub fn name(self) -> &'static str {
        match self {
            LerchFunction::LhatPlus => "lhat_plus",
            LerchFunction::LhatMinus => "lhat_minus",
            LerchFunction::LPlus => "lplus",
            LerchFunction::LMinus => "lminus",
            LerchFunction::ZetaStar => "zeta_star",
        }
    }

    fn needs(self, sign: Sign) -> bool {
        match self {
            LerchFunction::LhatPlus | LerchFunction::LPlus => sign == Sign::Plus,
            LerchFunction::LhatMinus | LerchFunction::LMinus => sign == Sign::Minus,
            LerchFunction::ZetaStar => true,
        }
    }

    fn completed(self) -> bool {
        matches!(self, LerchFunction::LhatPlus | LerchFunction::LhatMinus)
    }
}

impl fmt::Display for LerchFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Half-width of the window around a pole inside which the pole term is split off.
pub(crate) fn pole_window(working_bits: u32) -> f64 {
    2f64.powi(-(working_bits as i32) / 4)
}

fn dist(s: &ComplexValue, x: f64) -> f64 {
    s.add_f64(-x).abs_f64()
}

fn ln_pi(prec: u32) -> Float {
    Float::with_val(prec, Float::with_val(prec, Constant::Pi).ln_ref())
}

/// π^{w} as a ball.
pub(crate) fn pi_power(w: &ComplexValue, prec: u32) -> Ball {
    let pw = w.scale(&ln_pi(prec)).exp();
    let rad = pw.abs_f64() * (w.abs_f64() * 1.2 + 2.0) * 2f64.powi(-(prec as i32) + 2);
    Ball::new(pw, rad)
}

/// π^{(s+k)/2} / Γ((s+k)/2), the factor turning L̂± into L±.
pub(crate) fn gfactor(sign: Sign, s: &ComplexValue, prec: u32) -> Ball {
    let w = s.add_f64(sign.k() as f64).scale_f64(0.5);
    rgamma_ball(&w, prec).mul(&pi_power(&w, prec))
}

/// (G⁺(s) - 1)/(s - 1), regular at s = 1.
fn gplus_quotient(s: &ComplexValue, prec: u32) -> Ball {
    let d = dist(s, 1.0);
    // G⁺'(1) = (ln π + γ + 2 ln 2)/2
    let deriv = || {
        let p = prec + 8;
        let v = ln_pi(p) + Float::with_val(p, Constant::Euler) + Float::with_val(p, Float::with_val(p, Constant::Log2) * 2u32);
        ComplexValue::from_real(&Float::with_val(prec, v / 2u32))
    };
    if d == 0.0 {
        let v = deriv();
        let r = v.abs_f64() * 2f64.powi(-(prec as i32) + 2);
        return Ball::new(v, r);
    }
    if d < 2f64.powi(-(prec as i32)) {
        // |G⁺''|/2 ≤ 12 on the disc of radius 1/2 about 1
        let v = deriv();
        let r = v.abs_f64() * 2f64.powi(-(prec as i32) + 2) + 16.0 * d;
        return Ball::new(v, r);
    }
    let boost = prec + (-d.log2()).ceil().max(0.0) as u32 + 8;
    let sb = s.with_prec(boost);
    let g = gfactor(Sign::Plus, &sb, boost);
    let num = g.add(&Ball::exact(ComplexValue::from_f64(-1.0, 0.0, boost)));
    num.div(&Ball::exact(sb.add_f64(-1.0))).with_prec(prec)
}

/// Evaluates `func` at every (a_i, c_j) for one s at internal precision `prec`.
/// Output order is c outer, a inner.
pub(crate) fn grid_at_prec(
    func: LerchFunction,
    s: &ComplexValue,
    a_vals: &[Param],
    c_vals: &[Param],
    prec: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<(Ball, Option<Pole>)>> {
    let s = s.with_prec(prec);
    let a_red: Vec<Param> = a_vals.iter().map(Param::frac).collect();
    let c_red: Vec<(Param, Integer)> = c_vals.iter().map(|c| (c.frac(), c.floor())).collect();
    let c0s: Vec<Param> = c_red.iter().map(|r| r.0.clone()).collect();
    let mut sums = [None, None];
    for (slot, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
        if func.needs(sign) {
            let mut ls = LatticeSums::new(sign, &s, prec, ctx.working_bits(), ctx.guard_bits());
            sums[slot] = Some(ls.grid(&a_red, &c0s, Mode::Standard)?);
        }
    }
    let window = pole_window(ctx.working_bits());
    let near1 = dist(&s, 1.0) < window;
    let near0 = s.abs_f64() < window;
    let two = Float::with_val(prec, 2);
    let gp = (!func.completed() && func.needs(Sign::Plus)).then(|| gfactor(Sign::Plus, &s, prec));
    let gm = (!func.completed() && func.needs(Sign::Minus)).then(|| gfactor(Sign::Minus, &s, prec));
    let inv_sm1 = (!near1).then(|| Ball::one(prec).div(&Ball::exact(s.add_f64(-1.0))));
    let inv_s = (!near0).then(|| Ball::one(prec).div(&Ball::exact(s.clone())));
    let quotient = (near1 && gp.is_some()).then(|| gplus_quotient(&s, prec));
    // π^{s/2}/Γ(1 + s/2): the c-pole term after multiplying by G⁺
    let c_term = gp.as_ref().map(|_| {
        let h = s.scale_f64(0.5);
        rgamma_ball(&h.add_f64(1.0), prec).mul(&pi_power(&h, prec))
    });
    let loc1 = ComplexValue::one(prec);
    let loc0 = ComplexValue::zero(prec);

    let mut out = Vec::with_capacity(a_vals.len() * c_vals.len());
    for (j, (c0, kc)) in c_red.iter().enumerate() {
        let dc = c0.is_zero() && c0.is_rational();
        for (i, a0) in a_red.iter().enumerate() {
            let idx = j * a_vals.len() + i;
            let phase = shift_phase(a0, kc, prec);
            let da = a0.is_zero() && a0.is_rational();
            let mut pole: Option<Pole> = None;
            let plus = sums[0].as_ref().map(|v| v[idx].clone());
            let minus = sums[1].as_ref().map(|v| v[idx].clone());
            let value = match func {
                LerchFunction::LhatPlus => {
                    let mut v = plus.expect("plus sums");
                    if da {
                        match &inv_sm1 {
                            Some(inv) => v = v.add(&inv.scale(&two)),
                            None => pole = Some(Pole { location: loc1.clone(), residue: phase.scale_f64(2.0) }),
                        }
                    }
                    if dc {
                        match &inv_s {
                            Some(inv) => v = v.sub(&inv.scale(&two)),
                            None => pole = Some(Pole { location: loc0.clone(), residue: phase.scale_f64(-2.0) }),
                        }
                    }
                    v
                }
                LerchFunction::LhatMinus => minus.expect("minus sums"),
                LerchFunction::LPlus | LerchFunction::LMinus | LerchFunction::ZetaStar => {
                    let mut total = Ball::zero(prec);
                    if let (Some(sp), Some(g)) = (plus, gp.as_ref()) {
                        let mut v = g.mul(&sp);
                        if da {
                            match &inv_sm1 {
                                Some(inv) => v = v.add(&g.mul(inv).scale(&two)),
                                None => {
                                    let q = quotient.as_ref().expect("quotient near 1");
                                    v = v.add(&q.scale(&two));
                                    pole = Some(Pole { location: loc1.clone(), residue: phase.scale_f64(2.0) });
                                }
                            }
                        }
                        if dc {
                            v = v.sub(c_term.as_ref().expect("c-pole factor"));
                        }
                        total = total.add(&v);
                    }
                    if let (Some(sm), Some(g)) = (minus, gm.as_ref()) {
                        total = total.add(&g.mul(&sm));
                    }
                    if func == LerchFunction::ZetaStar {
                        total = total.scale(&Float::with_val(prec, 0.5));
                        if let Some(p) = pole.as_mut() {
                            p.residue = p.residue.scale_f64(0.5);
                        }
                    }
                    total
                }
            };
            out.push((value.mul_value(&phase), pole));
        }
    }
    Ok(out)
}

/// Bits lost to the growth of the sums when Re s is far from the critical strip.
pub(crate) fn extra_bits_for(s: &ComplexValue) -> u32 {
    let sigma = s.re.to_f64().abs();
    ((sigma + 1.0) * (sigma + 2.0).log2()).ceil() as u32
}

/// Runs a ball-valued grid evaluation, raising precision until every point meets the target.
pub(crate) fn escalate_grid<F>(ctx: &PrecisionContext, start: u32, mut eval: F) -> Result<Vec<(Ball, Option<Pole>)>>
where
    F: FnMut(u32) -> Result<Vec<(Ball, Option<Pole>)>>,
{
    let target = ctx.target_abs_error();
    let mut prec = start;
    let mut vals = eval(prec)?;
    for _ in 0..4 {
        let worst = vals.iter().map(|(b, _)| b.rad).fold(0.0, f64::max);
        if worst <= target {
            break;
        }
        let short = if worst.is_finite() { (worst / target).log2().ceil() as u32 } else { prec / 2 };
        prec += short + 24;
        vals = eval(prec)?;
    }
    Ok(vals)
}

pub(crate) fn finish(vals: Vec<(Ball, Option<Pole>)>, ctx: &PrecisionContext) -> Vec<EvalResult> {
    let out_prec = ctx.working_bits() + ctx.guard_bits();
    vals.into_iter()
        .map(|(b, pole)| {
            let mut r = b.with_prec(out_prec).into_result();
            r.pole = pole.map(|p| Pole { location: p.location.with_prec(out_prec), residue: p.residue.with_prec(out_prec) });
            r
        })
        .collect()
}

/// Evaluates `func` over the tensor grid a_vals × c_vals (c outer, a inner),
/// escalating precision until every point meets the context target.
pub fn evaluate_grid(
    func: LerchFunction,
    s: &ComplexValue,
    a_vals: &[Param],
    c_vals: &[Param],
    ctx: &PrecisionContext,
) -> Result<Vec<EvalResult>> {
    let start = ctx.internal_bits() + imaginary_part_bits(s) + extra_bits_for(s);
    let vals = escalate_grid(ctx, start, |prec| grid_at_prec(func, s, a_vals, c_vals, prec, ctx))?;
    Ok(finish(vals, ctx))
}

pub fn evaluate(func: LerchFunction, p: &LerchPoint, ctx: &PrecisionContext) -> Result<EvalResult> {
    let mut v = evaluate_grid(func, &p.s, std::slice::from_ref(&p.a), std::slice::from_ref(&p.c), ctx)?;
    Ok(v.pop().expect("one point"))
}

/// L̂±*(s, a, c).
pub fn lhat_star(sign: Sign, p: &LerchPoint, ctx: &PrecisionContext) -> Result<EvalResult> {
    let f = match sign {
        Sign::Plus => LerchFunction::LhatPlus,
        Sign::Minus => LerchFunction::LhatMinus,
    };
    evaluate(f, p, ctx)
}

/// L±*(s, a, c).
pub fn l_star(sign: Sign, p: &LerchPoint, ctx: &PrecisionContext) -> Result<EvalResult> {
    let f = match sign {
        Sign::Plus => LerchFunction::LPlus,
        Sign::Minus => LerchFunction::LMinus,
    };
    evaluate(f, p, ctx)
}

/// ζ*(s, a, c) for any real a, c.
pub fn zeta_star(p: &LerchPoint, ctx: &PrecisionContext) -> Result<EvalResult> {
    evaluate(LerchFunction::ZetaStar, p, ctx)
}

/// L̂±* summed over lattices centred on the unreduced (a, c), skipping the periodicity reduction.
/// Only for cross-checking the reduction; non-integral a and c only.
pub fn lhat_star_unreduced(sign: Sign, p: &LerchPoint, ctx: &PrecisionContext) -> Result<EvalResult> {
    if p.a.is_integer() || p.c.is_integer() {
        return Err(Error::DomainError("unreduced evaluation needs non-integral a and c".into()));
    }
    let start = ctx.internal_bits() + imaginary_part_bits(&p.s) + extra_bits_for(&p.s);
    let vals = escalate_grid(ctx, start, |prec| {
        let mut ls = LatticeSums::new(sign, &p.s, prec, ctx.working_bits(), ctx.guard_bits());
        let v = ls.grid(std::slice::from_ref(&p.a), std::slice::from_ref(&p.c), Mode::Standard)?;
        Ok(v.into_iter().map(|b| (b, None)).collect())
    })?;
    Ok(finish(vals, ctx).remove(0))
}

/// Hurwitz zeta ζ(s, c) for c > 0; equals ζ*(s, 0, c) on (0, 1].
pub fn hurwitz(s: &ComplexValue, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    if !c.cmp_int(0).is_gt() {
        return Err(Error::DomainError(format!("Hurwitz zeta needs c > 0, got {c}")));
    }
    if !c.cmp_int(1).is_gt() {
        return zeta_star(&LerchPoint::new(s.clone(), Param::int(0), c.clone()), ctx);
    }
    // ζ(s, c) = ζ(s, c0) - Σ_{j<k} (c0 + j)^{-s} with c0 in (0, 1]
    let mut k = c.floor();
    if c.is_integer() {
        k -= 1u32;
    }
    let base = c.sub(&Param::from(Rational::from(k.clone())));
    let kk = k.to_i64().filter(|&v| v <= 1 << 24).ok_or_else(|| Error::DomainError("c too large".into()))?;
    let r = hurwitz(s, &base, ctx)?;
    let prec = ctx.internal_bits() + imaginary_part_bits(s);
    let sp = s.with_prec(prec);
    let mut acc = Ball::zero(prec);
    for j in 0..kk {
        let t = base.add_int(j).to_float(prec);
        let lt = Float::with_val(prec, t.ln_ref());
        let v = ComplexValue::pow_from_ln(&lt, &(-&sp));
        let rad = v.abs_f64() * (sp.abs_f64() * lt.to_f64().abs() + 2.0) * 2f64.powi(-(prec as i32) + 2);
        acc = acc.add(&Ball::new(v, rad));
    }
    let b = r.ball().sub(&acc);
    let mut out = b.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result();
    out.pole = r.pole;
    Ok(out)
}

/// Periodic zeta F(a, s) = Σ_{n≥1} e^{2πina} n^{-s} = ζ*(s, a, 0).
pub fn periodic_zeta(a: &Param, s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    zeta_star(&LerchPoint::new(s.clone(), a.clone(), Param::int(0)), ctx)
}

/// A measured identity residual with the error bound of the quantities compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub err_bound: f64,
}

impl Residual {
    pub fn between(x: &EvalResult, y: &Ball) -> Residual {
        let d = x.ball().sub(y);
        Residual { residual: d.mid.abs_f64(), err_bound: x.err_bound + y.rad }
    }
}

fn no_pole(r: EvalResult, what: &str) -> Result<EvalResult> {
    match r.pole {
        Some(_) => Err(Error::PoleEncountered(what.to_string())),
        None => Ok(r),
    }
}

/// |L̂±*(s,a,c) - w± e^{-2πiac} L̂±*(1-s, 1-c, a)|.
pub fn lhat_fe_residual(sign: Sign, p: &LerchPoint, ctx: &PrecisionContext) -> Result<Residual> {
    let prec = ctx.internal_bits();
    let lhs = no_pole(lhat_star(sign, p, ctx)?, "L̂(s, a, c)")?;
    let dual = LerchPoint::new((-&p.s).add_f64(1.0), p.c.one_minus(), p.a.clone());
    let rhs = no_pole(lhat_star(sign, &dual, ctx)?, "L̂(1 - s, 1 - c, a)")?;
    let factor = &turn(&p.a.mul(&p.c).neg(), prec) * &sign.root_number(prec);
    Ok(Residual::between(&lhs, &rhs.ball().mul_value(&factor)))
}

/// Compares ζ*(1-s, a, c) with
/// (2π)^{-s}Γ(s){e^{πis/2}e^{-2πiac}ζ*(s,1-c,a) + e^{-πis/2}e^{2πic(1-a)}ζ*(s,c,1-a)}.
pub fn lerch_transform_check(p: &LerchPoint, ctx: &PrecisionContext) -> Result<Residual> {
    let prec = ctx.internal_bits() + imaginary_part_bits(&p.s);
    let s = p.s.with_prec(prec);
    let gamma = gamma_ball(&s, prec).map_err(|_| Error::PoleEncountered("Γ(s)".into()))?;
    let lhs = no_pole(zeta_star(&LerchPoint::new((-&s).add_f64(1.0), p.a.clone(), p.c.clone()), ctx)?, "ζ*(1 - s, a, c)")?;
    let z1 = no_pole(zeta_star(&LerchPoint::new(s.clone(), p.c.one_minus(), p.a.clone()), ctx)?, "ζ*(s, 1 - c, a)")?;
    let z2 = no_pole(zeta_star(&LerchPoint::new(s.clone(), p.c.clone(), p.a.one_minus()), ctx)?, "ζ*(s, c, 1 - a)")?;
    let pi = Float::with_val(prec, Constant::Pi);
    let half_pi_s = s.scale(&pi).scale_f64(0.5).mul_i();
    let e_plus = half_pi_s.exp();
    let e_minus = (-&half_pi_s).exp();
    let ph1 = turn(&p.a.mul(&p.c).neg(), prec);
    let ph2 = turn(&p.c.mul(&p.a.one_minus()), prec);
    let exp_rad = 2f64.powi(-(prec as i32) + 3) * (s.abs_f64() + 2.0);
    let f1 = &e_plus * &ph1;
    let f2 = &e_minus * &ph2;
    let t1 = z1.ball().mul(&Ball::new(f1.clone(), f1.abs_f64() * exp_rad));
    let t2 = z2.ball().mul(&Ball::new(f2.clone(), f2.abs_f64() * exp_rad));
    let two_pi = Float::with_val(prec, &pi * 2u32);
    let lt = Float::with_val(prec, two_pi.ln_ref());
    let pw = ComplexValue::pow_from_ln(&lt, &(-&s));
    let pw_rad = pw.abs_f64() * (s.abs_f64() * 2.0 + 2.0) * 2f64.powi(-(prec as i32) + 2);
    let rhs = t1.add(&t2).mul(&gamma).mul(&Ball::new(pw, pw_rad));
    Ok(Residual::between(&lhs, &rhs))
}
