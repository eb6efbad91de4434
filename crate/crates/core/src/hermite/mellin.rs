//! Two-sided Mellin transforms of φ_n by quadrature, and the difference
//! operators in s that x and d/dx become under them.

use rug::float::Constant;
use rug::Float;

use super::functions::HermiteGaussian;
use crate::error::Result;
use crate::lerch::Residual;
use crate::numerics::quad::{exp_sinh, QuadratureSpec};
use crate::numerics::{imaginary_part_bits, Ball, ComplexValue, EvalResult, PrecisionContext};

/// The function of x being transformed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MellinInput {
    /// φ_n
    Phi,
    /// φ_n'
    Derivative,
    /// x φ_n
    TimesX,
}

impl MellinInput {
    /// Parity (0 even, 1 odd) and order of vanishing at 0.
    fn shape(self, n: u32) -> (u32, u32) {
        match self {
            MellinInput::Phi => (n % 2, n % 2),
            MellinInput::Derivative => ((n + 1) % 2, (n + 1) % 2),
            MellinInput::TimesX => ((n + 1) % 2, n % 2 + 1),
        }
    }

    fn eval(self, h: &HermiteGaussian, x: &Float, prec: u32) -> Float {
        match self {
            MellinInput::Phi => h.eval(x, prec),
            MellinInput::Derivative => h.derivative(x, prec),
            MellinInput::TimesX => h.eval(x, prec) * x,
        }
    }
}

fn tol(ctx: &PrecisionContext) -> f64 {
    ctx.target_abs_error() / 4.0
}

fn transform(n: u32, input: MellinInput, k: u32, w: &ComplexValue, ctx: &PrecisionContext) -> Result<Ball> {
    let prec = ctx.internal_bits() + imaginary_part_bits(w) / 2;
    let (parity, order) = input.shape(n);
    if (k + parity) % 2 == 1 {
        return Ok(Ball::zero(prec));
    }
    let h = HermiteGaussian::new(n);
    let wm1 = w.with_prec(prec).add_f64(-1.0);
    let q = exp_sinh(
        |x: &Float| {
            let lx = Float::with_val(prec, x.ln_ref());
            let v = input.eval(&h, x, prec);
            Ok(ComplexValue::pow_from_ln(&lx, &wm1).scale(&v))
        },
        w.re.to_f64() + order as f64,
        2.0 / std::f64::consts::PI,
        prec,
        tol(ctx),
        QuadratureSpec::default(),
    )?;
    Ok(Ball::new(q.value.scale_f64(2.0), 2.0 * q.err))
}

/// M_k(g)(s) = ∫_ℝ g(x) sgn(x)^k |x|^{s-1} dx for g = φ_n, φ_n' or xφ_n.
///
/// The parity of g kills one of k = 0, 1 identically; the other is twice the
/// integral over (0, ∞), which needs Re s above minus the order of vanishing at 0.
pub fn hermite_mellin(n: u32, input: MellinInput, k: u32, s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    Ok(transform(n, input, k % 2, s, ctx)?.with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

/// Residuals of M_k(φ_n')(s) = -(s-1) M_{k+1}(φ_n)(s-1) and
/// M_k(xφ_n)(s) = M_{k+1}(φ_n)(s+1), taken at the k for which both sides are nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinResiduals {
    pub k: u32,
    pub derivative: Residual,
    pub multiplication: Residual,
}

pub fn mellin_difference_check(n: u32, s: &ComplexValue, ctx: &PrecisionContext) -> Result<MellinResiduals> {
    let k = (n + 1) % 2;
    let d_lhs = hermite_mellin(n, MellinInput::Derivative, k, s, ctx)?;
    let d_rhs = transform(n, MellinInput::Phi, k + 1, &s.add_f64(-1.0), ctx)?;
    let factor = (-s).add_f64(1.0);
    let m_lhs = hermite_mellin(n, MellinInput::TimesX, k, s, ctx)?;
    let m_rhs = transform(n, MellinInput::Phi, k + 1, &s.add_f64(1.0), ctx)?;
    Ok(MellinResiduals {
        k,
        derivative: Residual::between(&d_lhs, &d_rhs.mul_value(&factor.with_prec(d_rhs.prec()))),
        multiplication: Residual::between(&m_lhs, &m_rhs),
    })
}

/// |∫ φ_n(x) e^{-2πixξ} dx - (-i)^n φ_n(ξ)|.
pub fn fourier_residual(n: u32, xi: f64, ctx: &PrecisionContext) -> Result<Residual> {
    let prec = ctx.internal_bits();
    let h = HermiteGaussian::new(n);
    let freq = Float::with_val(prec, Constant::Pi) * 2u32 * xi;
    let odd = n % 2 == 1;
    let q = exp_sinh(
        |x: &Float| {
            let arg = Float::with_val(prec, &freq * x);
            let osc = if odd { arg.sin() } else { arg.cos() };
            Ok(ComplexValue::from_real(&(h.eval(x, prec) * osc)))
        },
        1.0,
        2.0 / std::f64::consts::PI,
        prec,
        tol(ctx),
        QuadratureSpec::default(),
    )?;
    // even part: 2∫ φ cos; odd part: -2i ∫ φ sin
    let integral = if odd { (-&q.value.mul_i()).scale_f64(2.0) } else { q.value.scale_f64(2.0) };
    let mut expect = ComplexValue::from_real(&h.eval(&Float::with_val(prec, xi), prec));
    for _ in 0..n % 4 {
        expect = -&expect.mul_i();
    }
    let lhs = Ball::new(integral, 2.0 * q.err).into_result();
    Ok(Residual::between(&lhs, &Ball::exact(expect)))
}
