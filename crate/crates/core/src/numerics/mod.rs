//! Multiprecision arithmetic and the special-function kernels used throughout.

mod ball;
mod complex;
mod gamma;
mod incgamma;
pub mod quad;
mod tate;

pub use ball::{Ball, EvalResult, Pole};
pub use complex::{float_to_decimal, ComplexValue};
pub use gamma::{complex_gamma, reciprocal_gamma};
pub use incgamma::upper_incomplete_gamma;
pub use tate::{tate_gamma, Sign};

pub(crate) use ball::ulp_bound;
pub(crate) use tate::tate_ball;
pub(crate) use gamma::{gamma_ball, rgamma_ball};
pub(crate) use incgamma::{lower_scaled_series, IncGamma};

use crate::error::{Error, Result};

/// Working precision and the absolute error target derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    working_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub fn new(working_bits: u32, guard_bits: u32) -> Result<Self> {
        if working_bits < 64 || guard_bits < 8 {
            return Err(Error::InvalidPrecision { working: working_bits, guard: guard_bits });
        }
        Ok(PrecisionContext { working_bits, guard_bits })
    }

    /// Context with the default 8 guard bits.
    pub fn with_bits(working_bits: u32) -> Result<Self> {
        Self::new(working_bits, 8)
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// `2^(-working_bits + guard_bits)`.
    pub fn target_abs_error(&self) -> f64 {
        2f64.powi(-(self.working_bits as i32) + self.guard_bits as i32)
    }

    /// Precision used for intermediate quantities.
    pub fn internal_bits(&self) -> u32 {
        self.working_bits + 2 * self.guard_bits + 16
    }

    /// Significant decimal digits carried by the working precision.
    pub fn decimal_digits(&self) -> usize {
        (self.working_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { working_bits: 128, guard_bits: 8 }
    }
}

/// Runs `eval` at increasing internal precision until the absolute error meets
/// the context target (or a relative target when `relative` is set).
pub(crate) fn escalate<F>(ctx: &PrecisionContext, extra_bits: u32, relative: bool, mut eval: F) -> Result<Ball>
where
    F: FnMut(u32) -> Result<Ball>,
{
    let target = ctx.target_abs_error();
    let mut prec = ctx.internal_bits() + extra_bits;
    let mut last = eval(prec)?;
    for _ in 0..4 {
        let scale = if relative { last.mid.abs_f64() } else { 1.0 };
        let goal = target * scale;
        if last.rad <= goal || !last.rad.is_finite() && !last.mid.is_finite() {
            break;
        }
        let short = if last.rad.is_finite() && goal > 0.0 {
            (last.rad / goal).log2().ceil().max(0.0) as u32
        } else {
            prec / 2
        };
        prec += short + 24;
        last = eval(prec)?;
    }
    Ok(last)
}

/// Extra bits anticipating cancellation in sums whose size is set by `|Im s|`.
pub(crate) fn imaginary_part_bits(s: &ComplexValue) -> u32 {
    let t = s.im.to_f64().abs();
    (t * std::f64::consts::PI / 4.0 / std::f64::consts::LN_2).ceil() as u32
}
