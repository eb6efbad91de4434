//! Growth of ∬_{[ε,1-ε]²} |α⁺L⁺ + α⁻L⁻|^p da dc as ε → 0.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};
use crate::lerch::{evaluate_grid, LerchFunction, Param};
use crate::numerics::{ComplexValue, PrecisionContext};

/// Coefficients of a combination α⁺ L⁺ + α⁻ L⁻.
#[derive(Debug, Clone, PartialEq)]
pub struct LpMember {
    pub plus: ComplexValue,
    pub minus: ComplexValue,
}

impl LpMember {
    pub fn plus_only() -> Self {
        LpMember { plus: ComplexValue::one(64), minus: ComplexValue::zero(64) }
    }

    pub fn minus_only() -> Self {
        LpMember { plus: ComplexValue::zero(64), minus: ComplexValue::one(64) }
    }

    /// ζ = (L⁺ + L⁻)/2
    pub fn zeta() -> Self {
        LpMember { plus: ComplexValue::from_f64(0.5, 0.0, 64), minus: ComplexValue::from_f64(0.5, 0.0, 64) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpGrowth {
    Bounded,
    /// I(ε) grows like ε^exponent.
    PowerDivergent { exponent: f64 },
    /// I(ε) grows like log(1/ε).
    LogDivergent,
}

impl LpGrowth {
    pub fn is_bounded(&self) -> bool {
        matches!(self, LpGrowth::Bounded)
    }
}

#[derive(Debug, Clone)]
pub struct LpReport {
    pub p: f64,
    pub eps: Vec<f64>,
    pub integrals: Vec<f64>,
    /// Slope of log(I(ε) - I(2ε)) against log ε over the last five ε; equals
    /// the growth exponent of I when negative.
    pub fitted_exponent: f64,
    /// Slope of log I against log ε over the last five ε.
    pub log_slope: f64,
    /// Exponent the correction terms predict, when they force divergence.
    pub predicted_exponent: Option<f64>,
    /// Whether 1 - 1/p < Re s < 1/p.
    pub predicted_member: bool,
    /// Difference between two quadrature orders at the smallest ε.
    pub quad_err: f64,
    pub growth: LpGrowth,
}

/// 1 - 1/p < Re s < 1/p: membership of the whole span of L± for 1 ≤ p < 2.
pub fn predicted_lp_member(sigma: f64, p: f64) -> bool {
    p < 2.0 && 1.0 - 1.0 / p < sigma && sigma < 1.0 / p
}

/// Power of ε by which c^{-s} (Re s > 1/p) or a^{s-1} (Re s < 1 - 1/p) make I(ε) grow.
fn predicted_exponent(sigma: f64, p: f64) -> Option<f64> {
    let from_c = (sigma > 1.0 / p).then(|| 1.0 - p * sigma);
    let from_a = (sigma < 1.0 - 1.0 / p).then(|| 1.0 - p * (1.0 - sigma));
    match (from_c, from_a) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn fit_slope(eps: &[f64], vals: &[f64]) -> f64 {
    let lx: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ly: Vec<f64> = vals.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

const K_MIN: i32 = 3;
const K_MAX: i32 = 10;
const NODES: usize = 8;
const CHECK_NODES: usize = 5;

/// Dyadic panels of (0, 1) graded towards both ends; `level` is the smallest
/// k for which the panel lies inside [2^{-k}, 1 - 2^{-k}].
fn panels() -> Vec<(f64, f64, i32)> {
    let mut out = Vec::new();
    for j in 1..K_MAX {
        let (lo, hi) = (2f64.powi(-j - 1), 2f64.powi(-j));
        out.push((lo, hi, (j + 1).max(K_MIN)));
        out.push((1.0 - hi, 1.0 - lo, (j + 1).max(K_MIN)));
    }
    out
}

/// Integrals I(2^{-k}) for k = K_MIN..=K_MAX with an n-point rule per panel.
fn integrals(member: &LpMember, s: &ComplexValue, p: f64, n: usize, ctx: &PrecisionContext) -> Result<Vec<f64>> {
    let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("positive order"));
    let mut nodes = Vec::new();
    for (lo, hi, level) in panels() {
        let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        for &(x, w) in &rule {
            nodes.push((mid + half * x, half * w, level));
        }
    }
    let params: Vec<Param> = nodes.iter().map(|n| Param::real_f64(n.0, 64)).collect();
    let mut combo = vec![ComplexValue::zero(64); nodes.len() * nodes.len()];
    for (func, coeff) in [(LerchFunction::LPlus, &member.plus), (LerchFunction::LMinus, &member.minus)] {
        if coeff.is_zero() {
            continue;
        }
        let vals = evaluate_grid(func, s, &params, &params, ctx)?;
        for (slot, v) in combo.iter_mut().zip(vals) {
            let term = &v.value.with_prec(64) * &coeff.with_prec(64);
            *slot = &*slot + &term;
        }
    }
    let mut out = vec![0.0; (K_MAX - K_MIN + 1) as usize];
    for (j, nc) in nodes.iter().enumerate() {
        for (i, na) in nodes.iter().enumerate() {
            let v = combo[j * nodes.len() + i].abs_f64().powf(p) * na.1 * nc.1;
            let level = na.2.max(nc.2);
            for (slot, k) in out.iter_mut().zip(K_MIN..) {
                if level <= k {
                    *slot += v;
                }
            }
        }
    }
    Ok(out)
}

/// Measures how ∬_{[ε,1-ε]²} |α⁺L⁺ + α⁻L⁻|^p da dc behaves for ε = 2^{-3..-10}.
///
/// The increments I(ε) - I(2ε) are fitted to a power ε^β over the last five
/// steps: β > 0.1 is bounded, β < -0.1 power growth, anything between
/// logarithmic growth.
pub fn lp_diagnostic(member: &LpMember, s: &ComplexValue, p: f64, ctx: &PrecisionContext) -> Result<LpReport> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::DomainError(format!("p must be a finite real ≥ 1, got {p}")));
    }
    if member.plus.is_zero() && member.minus.is_zero() {
        return Err(Error::DomainError("the combination must be nonzero".into()));
    }
    let main = integrals(member, s, p, NODES, ctx)?;
    let check = integrals(member, s, p, CHECK_NODES, ctx)?;
    let last = main.len() - 1;
    let quad_err = (main[last] - check[last]).abs();
    if !(quad_err <= 1e-3 * main[last].abs().max(1e-300)) {
        return Err(Error::QuadratureNonconvergent(format!(
            "panel rules of order {NODES} and {CHECK_NODES} differ by {quad_err:e} on an integral of {:e}",
            main[last]
        )));
    }
    let eps: Vec<f64> = (K_MIN..=K_MAX).map(|k| 2f64.powi(-k)).collect();
    let tail = eps.len() - 5;
    let log_slope = fit_slope(&eps[tail..], &main[tail..]);
    // increments I(ε) - I(2ε) behave like ε^β: β > 0 converges, β = 0 is
    // logarithmic growth and β < 0 is the power growth of I itself
    let inc: Vec<f64> = main.windows(2).map(|w| (w[1] - w[0]).max(f64::MIN_POSITIVE)).collect();
    let it = inc.len() - 5;
    let beta = fit_slope(&eps[it + 1..], &inc[it..]);
    let growth = if beta > 0.1 {
        LpGrowth::Bounded
    } else if beta < -0.1 {
        LpGrowth::PowerDivergent { exponent: beta }
    } else {
        LpGrowth::LogDivergent
    };
    let sigma = s.re.to_f64();
    Ok(LpReport {
        p,
        eps,
        integrals: main,
        fitted_exponent: beta,
        log_slope,
        predicted_exponent: predicted_exponent(sigma, p),
        predicted_member: predicted_lp_member(sigma, p),
        quad_err,
        growth,
    })
}
