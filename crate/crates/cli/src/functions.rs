//! The function selector shared by `eval` and `grid`.

use clap::ValueEnum;
use lerch_zeta::boundary::renorm_l;
use lerch_zeta::hermite::lhat_n;
use lerch_zeta::lerch::{evaluate, hurwitz, periodic_zeta, LerchFunction, LerchPoint, Param};
use lerch_zeta::{ComplexValue, EvalResult, PrecisionContext, Sign};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Func {
    /// ζ*(s, a, c) for any real a, c
    Zeta,
    /// L⁺*(s, a, c)
    Lplus,
    /// L⁻*(s, a, c)
    Lminus,
    /// L̂⁺*(s, a, c)
    LhatPlus,
    /// L̂⁻*(s, a, c)
    LhatMinus,
    /// Hurwitz ζ(s, c), c > 0 (ignores --a)
    Hurwitz,
    /// Periodic zeta F(a, s) (ignores --c)
    Periodic,
    /// Renormalized L^{R,+}(s, a, c) on the closed unit square
    RenormPlus,
    /// Renormalized L^{R,-}(s, a, c) on the closed unit square
    RenormMinus,
    /// L̂_n(s, a, c) for 0 < a, c < 1 (needs --n)
    LhatN,
}

impl Func {
    pub fn uses_a(self) -> bool {
        self != Func::Hurwitz
    }

    pub fn uses_c(self) -> bool {
        self != Func::Periodic
    }

    pub fn on_grids(self) -> bool {
        self.uses_a() && self.uses_c()
    }
}

/// Evaluates one point. `a` and `c` are ignored by the functions that do not use them.
pub fn evaluate_point(func: Func, n: Option<u32>, s: &ComplexValue, a: &Param, c: &Param, ctx: &PrecisionContext) -> Result<EvalResult, CliError> {
    let lerch = |f: LerchFunction| evaluate(f, &LerchPoint::new(s.clone(), a.clone(), c.clone()), ctx);
    Ok(match func {
        Func::Zeta => lerch(LerchFunction::ZetaStar)?,
        Func::Lplus => lerch(LerchFunction::LPlus)?,
        Func::Lminus => lerch(LerchFunction::LMinus)?,
        Func::LhatPlus => lerch(LerchFunction::LhatPlus)?,
        Func::LhatMinus => lerch(LerchFunction::LhatMinus)?,
        Func::Hurwitz => hurwitz(s, c, ctx)?,
        Func::Periodic => periodic_zeta(a, s, ctx)?,
        Func::RenormPlus => renorm_l(Sign::Plus, s, a, c, ctx)?,
        Func::RenormMinus => renorm_l(Sign::Minus, s, a, c, ctx)?,
        Func::LhatN => {
            let n = n.ok_or_else(|| CliError::Parse("--fn lhat-n needs --n".into()))?;
            lhat_n(n, s, a, c, ctx)?
        }
    })
}
