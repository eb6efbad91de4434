//! Zeta integrals of arbitrary test functions: lattice averages, their Mellin
//! integrals over [1, ∞) and the meromorphic functions F_k they assemble into.

mod test_function;

use rug::Float;

use crate::error::{Error, Result};
use crate::lerch::{pole_window, turn, Param, Residual};
use crate::numerics::quad::{exp_sinh, QuadratureSpec};
use crate::numerics::{imaginary_part_bits, Ball, ComplexValue, EvalResult, Pole, PrecisionContext};

pub use test_function::{DecayEnvelope, Parity, RealFn, Registry, TestFunction};

/// Hard cap on lattice terms in a single average.
const MAX_LATTICE_TERMS: usize = 200_000;

/// A regular part plus simple poles carried symbolically.
#[derive(Debug, Clone)]
struct Mero {
    value: Ball,
    poles: Vec<Pole>,
}

impl Mero {
    fn regular(value: Ball) -> Mero {
        Mero { value, poles: Vec::new() }
    }

    fn scale(&self, k: &ComplexValue) -> Mero {
        Mero {
            value: self.value.mul_value(k),
            poles: self.poles.iter().map(|p| Pole { location: p.location.clone(), residue: &p.residue * k }).collect(),
        }
    }

    fn add(&self, o: &Mero) -> Mero {
        let mut poles = self.poles.clone();
        for q in &o.poles {
            match poles.iter_mut().find(|p| p.location == q.location) {
                Some(p) => p.residue = &p.residue + &q.residue,
                None => poles.push(q.clone()),
            }
        }
        Mero { value: self.value.add(&o.value), poles }
    }

    /// Re-expresses poles in w = 1 - s as poles in s.
    fn reflect_variable(self) -> Mero {
        let poles = self.poles.into_iter().map(|p| Pole { location: (-&p.location).add_f64(1.0), residue: -&p.residue }).collect();
        Mero { value: self.value, poles }
    }

    fn pole_term(residue: ComplexValue, location: f64, prec: u32) -> Mero {
        Mero { value: Ball::zero(prec), poles: vec![Pole { location: ComplexValue::from_f64(location, 0.0, prec), residue }] }
    }

    /// Keeps the pole nearest to s in the pole field and folds the others into the value.
    fn into_result(self, s: &ComplexValue, ctx: &PrecisionContext) -> EvalResult {
        let out = ctx.working_bits() + ctx.guard_bits();
        let prec = self.value.prec();
        let mut value = self.value;
        let mut poles = self.poles;
        poles.retain(|p| !p.residue.is_zero());
        poles.sort_by(|p, q| (s - &p.location).abs_f64().total_cmp(&(s - &q.location).abs_f64()));
        let keep = if poles.is_empty() { None } else { Some(poles.remove(0)) };
        for p in poles {
            let d = Ball::exact(&s.with_prec(prec) - &p.location.with_prec(prec));
            value = value.add(&Ball::exact(p.residue.with_prec(prec)).div(&d));
        }
        let mut r = value.with_prec(out).into_result();
        r.pole = keep.map(|p| Pole { location: p.location.with_prec(out), residue: p.residue.with_prec(out) });
        r
    }

    /// Value with every pole term added back; fails inside a pole window.
    fn full(&self, s: &ComplexValue, ctx: &PrecisionContext, what: &str) -> Result<Ball> {
        let prec = self.value.prec();
        let mut v = self.value.clone();
        for p in &self.poles {
            if p.residue.is_zero() {
                continue;
            }
            let d = &s.with_prec(prec) - &p.location.with_prec(prec);
            if d.abs_f64() < pole_window(ctx.working_bits()) {
                return Err(Error::PoleEncountered(format!("{what} at s = {}", p.location)));
            }
            v = v.add(&Ball::exact(p.residue.with_prec(prec)).div(&Ball::exact(d)));
        }
        Ok(v)
    }
}

/// Lattice points t = n + c with their phases, ordered by |t|.
struct Lattice {
    points: Vec<(Float, ComplexValue)>,
    cutoff: f64,
    /// Bound for the omitted terms at any x ≥ x_min.
    tail: f64,
}

fn cutoff_for(decay: &DecayEnvelope, prec: u32) -> f64 {
    let budget = prec as f64 * std::f64::consts::LN_2 + decay.constant.max(1.0).ln() + 40.0;
    (decay.rate * budget).sqrt()
}

/// Points t = n + c with |t| x_min ≤ cutoff, skipping t = 0 when `exclude_zero`;
/// the phase of n is e^{2πi a (n + shift)}.
fn lattice(a: &Param, c: &Param, shift: &Param, x_min: f64, exclude_zero: bool, decay: &DecayEnvelope, prec: u32) -> Result<Lattice> {
    if c.is_real_on_integer() {
        return Err(Error::DomainError(
            "a real-typed c lies exactly on an integer; pass it as a rational to select the integer case".into(),
        ));
    }
    let cutoff = cutoff_for(decay, prec);
    let reach = cutoff / x_min;
    let center = -c.to_f64().round() as i64;
    let half = reach.ceil() as i64 + 1;
    if (2 * half + 1) as usize > MAX_LATTICE_TERMS {
        return Err(Error::DecayEnvelopeInsufficient(format!(
            "lattice average at x = {x_min:e} needs more than {MAX_LATTICE_TERMS} terms"
        )));
    }
    let mut points = Vec::new();
    for n in (center - half)..=(center + half) {
        let t = c.add_int(n);
        if exclude_zero && t.is_zero() {
            continue;
        }
        let tf = t.to_float(prec);
        if tf.to_f64().abs() * x_min > cutoff {
            continue;
        }
        let phase = turn(&a.mul(&shift.add_int(n)), prec);
        points.push((tf, phase));
    }
    points.sort_by(|p, q| p.0.to_f64().abs().total_cmp(&q.0.to_f64().abs()));
    // omitted |t| x ≥ cutoff, spaced by x ≥ x_min on each side
    let r = decay.rate;
    let tail = 2.0 * decay.constant * (-cutoff * cutoff / r).exp() / (1.0 - (-2.0 * cutoff * x_min / r).exp());
    Ok(Lattice { points, cutoff, tail })
}

impl Lattice {
    fn sum(&self, g: &RealFn, x: &Float, prec: u32) -> ComplexValue {
        let xf = x.to_f64();
        let mut acc = ComplexValue::zero(prec);
        for (t, ph) in &self.points {
            if t.to_f64().abs() * xf > self.cutoff {
                break;
            }
            let arg = Float::with_val(prec, t * x);
            acc = &acc + &(&g(&arg, prec) * ph);
        }
        acc
    }
}

/// A^{a,c}[f](x) = Σ_n f((n + c)x) e^{2πina}.
pub fn averaged_kernel(f: &TestFunction, a: &Param, c: &Param, x: &Float, ctx: &PrecisionContext) -> Result<EvalResult> {
    let xf = x.to_f64();
    if xf <= 0.0 {
        return Err(Error::DomainError("averaged kernel needs x > 0".into()));
    }
    let decay = f.decay();
    // the rounding of each term scales with the envelope constant
    let prec = ctx.internal_bits() + decay.constant.max(1.0).log2().ceil() as u32 + 8;
    let lat = lattice(a, c, &Param::int(0), xf, false, &decay, prec)?;
    let g: RealFn = std::sync::Arc::new({
        let f = f.clone();
        move |y: &Float, p: u32| f.eval(y, p)
    });
    let v = lat.sum(&g, &Float::with_val(prec, x), prec);
    let round = (lat.points.len() as f64 + 1.0) * decay.constant * 2f64.powi(-(prec as i32) + 3);
    let err = lat.tail + round;
    if err > ctx.target_abs_error() {
        return Err(Error::DecayEnvelopeInsufficient(format!("tail bound {err:e} above target")));
    }
    Ok(Ball::new(v, err).with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

/// The Poisson-dual side (1/x) e^{-2πiac} Σ_m e^{2πimc} Ff((m - a)/x) of the averaged kernel.
pub fn poisson_dual(f: &TestFunction, a: &Param, c: &Param, x: &Float, ctx: &PrecisionContext) -> Result<EvalResult> {
    let xf = x.to_f64();
    if xf <= 0.0 {
        return Err(Error::DomainError("averaged kernel needs x > 0".into()));
    }
    let prec = ctx.internal_bits();
    let inv = Float::with_val(prec, x.recip_ref());
    // Σ_m e^{2πimc} Ff((m - a)/x) is the lattice average of Ff with roles (c, -a) at 1/x
    let r = averaged_kernel(&f.fourier_dual(), c, &a.neg(), &inv, ctx)?;
    let b = r.ball().scale(&inv).mul_value(&turn(&a.mul(c).neg(), prec));
    Ok(b.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

fn quad_tol(ctx: &PrecisionContext) -> f64 {
    ctx.target_abs_error() / 4.0
}

/// ∫_1^∞ Σ_{n+c≠0} e^{2πia(n+c/2)} g((n+c)x) x^{s-1} dx without the pole term.
fn raw_phi(g: &RealFn, decay: &DecayEnvelope, s: &ComplexValue, a: &Param, c: &Param, prec: u32, tol: f64, spec: QuadratureSpec) -> Result<Ball> {
    let half_c = c.mul(&Param::ratio(1, 2));
    let lat = lattice(a, c, &half_c, 1.0, true, decay, prec)?;
    let Some(t_min) = lat.points.first().map(|p| p.0.to_f64().abs()) else {
        return Ok(Ball::zero(prec));
    };
    let sm1 = s.add_f64(-1.0).with_prec(prec);
    let one = Float::with_val(prec, 1);
    let integrand = |y: &Float| -> Result<ComplexValue> {
        let x = Float::with_val(prec, y + &one);
        let lx = Float::with_val(prec, x.ln_ref());
        let w = ComplexValue::pow_from_ln(&lx, &sm1);
        Ok(&lat.sum(g, &x, prec) * &w)
    };
    let decay_scale = decay.rate / (t_min * t_min);
    let q = exp_sinh(integrand, 1.0, decay_scale, prec, tol, spec)?;
    // tail of the lattice, integrated against x^{σ-1} over the quadrature range
    let target = prec as f64 * std::f64::consts::LN_2 + 20.0;
    let x_hi = 1.0 + (decay_scale * target).sqrt().max(2.0);
    let sigma = s.re.to_f64();
    let weight = if sigma.abs() < 1e-12 { x_hi.ln() } else { (x_hi.powf(sigma) - 1.0).abs() / sigma.abs() };
    let rounding = (lat.points.len() as f64 + 1.0) * decay.constant * 2f64.powi(-(prec as i32) + 4) * weight.max(1.0);
    Ok(Ball::new(q.value, q.err + lat.tail * weight + rounding))
}

fn g_of(f: &TestFunction) -> RealFn {
    let f = f.clone();
    std::sync::Arc::new(move |y: &Float, p: u32| f.eval(y, p))
}

fn f_at_zero(f: &TestFunction, prec: u32) -> ComplexValue {
    f.eval(&Float::with_val(prec, 0), prec)
}

fn phi_single(f: &TestFunction, s: &ComplexValue, a: &Param, c: &Param, prec: u32, ctx: &PrecisionContext, spec: QuadratureSpec) -> Result<Mero> {
    let mut m = Mero::regular(raw_phi(&g_of(f), &f.decay(), s, a, c, prec, quad_tol(ctx), spec)?);
    if c.is_integer() {
        // the excluded n = -c term contributes -e^{-πiac} f(0)/s
        let w = &turn(&a.mul(c).mul(&Param::ratio(-1, 2)), prec) * &f_at_zero(f, prec);
        m = m.add(&Mero::pole_term(-&w, 0.0, prec));
    }
    Ok(m)
}

fn phi_k_inner(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, prec: u32, ctx: &PrecisionContext, spec: QuadratureSpec) -> Result<Mero> {
    let g = g_of(f);
    let decay = f.decay();
    let tol = quad_tol(ctx);
    let first = raw_phi(&g, &decay, s, a, c, prec, tol, spec)?;
    let second = raw_phi(&g, &decay, s, &a.one_minus(), &c.one_minus(), prec, tol, spec)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    // (-1)^k e^{-πi(a+1-c)}
    let w = turn(&a.add_int(1).sub(c).mul(&Param::ratio(-1, 2)), prec).scale_f64(sign);
    let mut m = Mero::regular(first.add(&second.mul_value(&w)));
    if c.is_integer() && k % 2 == 0 {
        let weight = (&turn(&a.mul(c).mul(&Param::ratio(-1, 2)), prec) * &f_at_zero(f, prec)).scale_f64(2.0);
        m = m.add(&Mero::pole_term(-&weight, 0.0, prec));
    }
    Ok(m)
}

fn start_prec(s: &ComplexValue, ctx: &PrecisionContext) -> u32 {
    ctx.internal_bits() + imaginary_part_bits(s) / 2
}

/// Φ(f; s, a, c): the [1, ∞) integral over the lattice n + c ≠ 0, with the term
/// -e^{-πiac} f(0)/s of the excluded point reported as a pole at 0 when c ∈ Z.
pub fn phi_integral(f: &TestFunction, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    phi_integral_with(f, s, a, c, ctx, QuadratureSpec::default())
}

pub fn phi_integral_with(f: &TestFunction, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext, spec: QuadratureSpec) -> Result<EvalResult> {
    let prec = start_prec(s, ctx);
    Ok(phi_single(f, s, a, c, prec, ctx, spec)?.into_result(s, ctx))
}

/// Φ_k(f; s, a, c) = Φ(f; s, a, c) + (-1)^k e^{-πi(a+1-c)} Φ(f; s, 1-a, 1-c), pole terms combined.
pub fn phi_k(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    let prec = start_prec(s, ctx);
    Ok(phi_k_inner(f, k, s, a, c, prec, ctx, QuadratureSpec::default())?.into_result(s, ctx))
}

fn f_k_inner(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext, spec: QuadratureSpec) -> Result<Mero> {
    let prec = start_prec(s, ctx);
    let s = s.with_prec(prec);
    let left = phi_k_inner(f, k, &s, a, c, prec, ctx, spec)?;
    let w = (-&s).add_f64(1.0);
    let right = phi_k_inner(&f.fourier_dual(), k, &w, &c.one_minus(), a, prec, ctx, spec)?.reflect_variable();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let factor = turn(&a.mul(&Param::ratio(-1, 2)), prec).scale_f64(sign);
    Ok(left.add(&right.scale(&factor)))
}

/// F_k(f; s, a, c) = Φ_k(f; s, a, c) + (-1)^k e^{-πia} Φ_k(Ff; 1-s, 1-c, a).
///
/// Poles at s = 0 (c ∈ Z) and s = 1 (a ∈ Z) are carried symbolically: the one
/// nearest s is reported in the pole field, any other is folded into the value.
pub fn f_k(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult> {
    f_k_with(f, k, s, a, c, ctx, QuadratureSpec::default())
}

pub fn f_k_with(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext, spec: QuadratureSpec) -> Result<EvalResult> {
    Ok(f_k_inner(f, k, s, a, c, ctx, spec)?.into_result(s, ctx))
}

/// |F_k(f; s, a, c) - (-1)^k e^{-πia} F_k(Ff; 1-s, 1-c, a)|, both sides from separate quadratures.
pub fn fe_residual_general(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<Residual> {
    let spec = QuadratureSpec::default();
    let lhs = f_k_inner(f, k, s, a, c, ctx, spec)?.full(s, ctx, "F_k(f; s, a, c)")?;
    let w = (-s).add_f64(1.0);
    let rhs = f_k_inner(&f.fourier_dual(), k, &w, &c.one_minus(), a, ctx, spec)?.full(&w, ctx, "F_k(Ff; 1 - s, 1 - c, a)")?;
    let prec = lhs.prec();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let factor = turn(&a.mul(&Param::ratio(-1, 2)), prec).scale_f64(sign);
    let d = lhs.sub(&rhs.mul_value(&factor));
    Ok(Residual { residual: d.mid.abs_f64(), err_bound: lhs.rad + rhs.rad })
}

fn compare(x: &Mero, y: &Mero, phase: &ComplexValue) -> Residual {
    let y = y.scale(phase);
    let d = x.value.sub(&y.value);
    let mut residual = d.mid.abs_f64();
    for p in &x.poles {
        let other = y.poles.iter().find(|q| q.location == p.location).map(|q| q.residue.clone());
        let other = other.unwrap_or_else(|| ComplexValue::zero(p.residue.prec()));
        residual = residual.max((&p.residue - &other).abs_f64());
    }
    for q in &y.poles {
        if !x.poles.iter().any(|p| p.location == q.location) {
            residual = residual.max(q.residue.abs_f64());
        }
    }
    Residual { residual, err_bound: x.value.rad + y.value.rad }
}

/// Residuals of F_k(a+1, c) = e^{πic} F_k(a, c) and F_k(a, c+1) = e^{-πia} F_k(a, c).
/// Regular parts and residues are compared separately.
pub fn periodicity_residuals(f: &TestFunction, k: u32, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<(Residual, Residual)> {
    let spec = QuadratureSpec::default();
    let base = f_k_inner(f, k, s, a, c, ctx, spec)?;
    let shifted_a = f_k_inner(f, k, s, &a.add_int(1), c, ctx, spec)?;
    let shifted_c = f_k_inner(f, k, s, a, &c.add_int(1), ctx, spec)?;
    let prec = base.value.prec();
    let ra = compare(&shifted_a, &base, &turn(&c.mul(&Param::ratio(1, 2)), prec));
    let rc = compare(&shifted_c, &base, &turn(&a.mul(&Param::ratio(-1, 2)), prec));
    Ok((ra, rc))
}

#[cfg(test)]
mod tests;
