//! Orthogonality of p_n(1/2 + ix) and q_n(1/2 + ix) against |Γ(λ + ix/2)|².

use rug::Float;

use super::poly::{poly_family, Family, IntPolynomial};
use crate::error::{Error, Result};
use crate::numerics::quad::{tanh_sinh, QuadratureSpec};
use crate::numerics::{gamma_ball, Ball, ComplexValue, EvalResult, PrecisionContext};

/// Coefficients of B(x) = Σ |c_j| (1/2 + x)^j, which dominates |p(1/2 + ix)| for x ≥ 0.
fn majorant(p: &IntPolynomial) -> Vec<f64> {
    let mut out = vec![0.0; p.coefficients().len()];
    let mut pw = vec![1.0];
    for c in p.coefficients() {
        let a = c.to_f64().abs();
        for (k, v) in pw.iter().enumerate() {
            out[k] += a * v;
        }
        let mut next = vec![0.0; pw.len() + 1];
        for (k, v) in pw.iter().enumerate() {
            next[k] += 0.5 * v;
            next[k + 1] += v;
        }
        pw = next;
    }
    out
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// ∫_t^∞ x^k e^{-βx} dx = e^{-βt} Σ_{j≤k} k!/j! t^j / β^{k-j+1}.
fn exp_moment_tail(k: usize, beta: f64, t: f64) -> f64 {
    if t == 0.0 {
        return (1..=k).fold(1.0 / beta, |acc, j| acc * j as f64 / beta);
    }
    let mut sum = 0.0;
    // term for j = k is t^k / β, stepping down from j multiplies by j / (β t)
    let mut term = t.powi(k as i32) / beta;
    for j in (0..=k).rev() {
        sum += term;
        if j > 0 {
            term *= j as f64 / (beta * t);
        }
    }
    (-beta * t).exp() * sum
}

/// G(x) ≥ |F_m F_n| (1 + x/2) on x ≥ 0, as polynomial coefficients.
fn tail_polynomial(pm: &IntPolynomial, pn: &IntPolynomial) -> Vec<f64> {
    mul(&mul(&majorant(pm), &majorant(pn)), &[1.0, 0.5])
}

/// Bound on ∫_{|x|>t} |F_m F_n| |Γ(λ + ix/2)|² dx for t ≥ 2.
///
/// Stirling with |μ(z)| ≤ 1/(6|z|) on Re z > 0 and arg z ≥ π/2 - λ/y gives
/// |Γ(λ + iy)|² ≤ 2π e^{1/3} |z|^{2λ-1} e^{-π|y|} once |z| ≥ 1, and
/// |z|^{2λ-1} ≤ 1 + |x|/2 for λ ≤ 3/4.
fn tail_bound(g: &[f64], t: f64) -> f64 {
    let beta = std::f64::consts::FRAC_PI_2;
    let c = 2.0 * std::f64::consts::PI * (1.0f64 / 3.0).exp();
    2.0 * c * g.iter().enumerate().map(|(k, gk)| gk * exp_moment_tail(k, beta, t)).sum::<f64>()
}

/// Cutoff T with the two tails below `tol`, starting from √(2 wb ln 2) + 2n.
pub fn inner_product_cutoff(family: Family, m: u32, n: u32, tol: f64, working_bits: u32) -> f64 {
    let g = tail_polynomial(&poly_family(family, m), &poly_family(family, n));
    let mut t = ((2.0 * working_bits as f64 * std::f64::consts::LN_2).sqrt() + 2.0 * m.max(n) as f64).max(2.0);
    while tail_bound(&g, t) > tol {
        t += 1.0;
    }
    t
}

/// ⟨F_m, F_n⟩ = ∫ conj(F_m(x)) F_n(x) |Γ(λ + ix/2)|² dx with F = p or q at 1/2 + ix,
/// λ = 1/4 for p and 3/4 for q.
///
/// F(-x) = conj F(x) makes the integrand conjugate-symmetric, so the integral is
/// 2 Re ∫_0^T, computed on unit panels. The tolerance is relative to a bound for
/// ∫ |F_m F_n| |Γ|², which sets the scale of the product.
pub fn mp_inner_product(family: Family, m: u32, n: u32, ctx: &PrecisionContext) -> Result<EvalResult> {
    let (pm, pn) = (poly_family(family, m), poly_family(family, n));
    let g = tail_polynomial(&pm, &pn);
    let scale = tail_bound(&g, 0.0).max(1.0) * 4.0;
    let tol = ctx.target_abs_error() * scale / 4.0;
    let t = inner_product_cutoff(family, m, n, tol, ctx.working_bits());
    let prec = ctx.internal_bits() + (scale.log2().ceil().max(0.0) as u32);
    let lambda = Float::with_val(prec, family.weight_shift());
    let half = ComplexValue::from_f64(0.5, 0.0, prec);
    let panels = t.ceil() as u32;
    let panel_tol = tol / (4.0 * panels as f64);
    let mut total = ComplexValue::zero(prec);
    let mut err = 0.0;
    for j in 0..panels {
        let lo = Float::with_val(prec, j);
        let hi = Float::with_val(prec, ((j + 1) as f64).min(t));
        let q = tanh_sinh(
            |x: &Float| {
                let z = ComplexValue::from_floats(lambda.clone(), Float::with_val(prec, x / 2u32));
                let w = gamma_ball(&z, prec)?.mid.abs();
                let w = Float::with_val(prec, w.square_ref());
                let s = &half + &ComplexValue::from_floats(Float::new(prec), x.clone());
                Ok((&pm.eval(&s).conj() * &pn.eval(&s)).scale(&w))
            },
            &lo,
            &hi,
            prec,
            panel_tol,
            QuadratureSpec::with_level(8),
        )?;
        if !(q.err <= panel_tol * 16.0) {
            return Err(Error::QuadratureNonconvergent(format!("panel [{j}, {}] error {:e}", j + 1, q.err)));
        }
        total = &total + &q.value;
        err += q.err;
    }
    let value = ComplexValue::from_real(&Float::with_val(prec, &total.re * 2u32));
    let rad = 2.0 * err + tail_bound(&g, t) + scale * 2f64.powi(-(prec as i32) + 8);
    Ok(Ball::new(value, rad).with_prec(ctx.working_bits() + ctx.guard_bits()).into_result())
}

/// |⟨F_m, F_n⟩| relative to the geometric mean of the two norms.
pub fn normalized_inner_product(family: Family, m: u32, n: u32, ctx: &PrecisionContext) -> Result<f64> {
    let mn = mp_inner_product(family, m, n, ctx)?;
    let mm = mp_inner_product(family, m, m, ctx)?;
    let nn = mp_inner_product(family, n, n, ctx)?;
    Ok(mn.value.abs_f64() / (mm.value.re.to_f64() * nn.value.re.to_f64()).sqrt())
}
