use std::fmt;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::ComplexValue;

/// A real parameter, either an exact rational or a multiprecision real.
///
/// Only the rational form can be an integer: a real-typed value that happens
/// to equal an integer bitwise is still treated as non-integral.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Rational(Rational),
    Real(Float),
}

impl Param {
    pub fn int(n: i64) -> Self {
        Param::Rational(Rational::from(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Param::Rational(Rational::from((num, den)))
    }

    pub fn real(x: Float) -> Self {
        Param::Real(x)
    }

    pub fn real_f64(x: f64, prec: u32) -> Self {
        Param::Real(Float::with_val(prec, x))
    }

    /// Parses `p/q` or an integer as an exact rational, anything else as a real.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::DomainError(format!("cannot parse parameter '{text}'"));
        if t.contains('/') || !t.contains(['.', 'e', 'E']) {
            let r: Rational = t.parse().map_err(|_| bad())?;
            Ok(Param::Rational(r))
        } else {
            let f = Float::parse(t).map_err(|_| bad())?;
            Ok(Param::Real(Float::with_val(prec, f)))
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Param::Rational(_))
    }

    /// Exact integrality (rationals only).
    pub fn is_integer(&self) -> bool {
        match self {
            Param::Rational(r) => r.denom() == &1,
            Param::Real(_) => false,
        }
    }

    /// A real-typed value lying exactly on an integer.
    pub fn is_real_on_integer(&self) -> bool {
        matches!(self, Param::Real(x) if x.is_integer())
    }

    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Param::Rational(r) => Float::with_val(prec, r),
            Param::Real(x) => Float::with_val(prec, x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Rational(r) => r.to_f64(),
            Param::Real(x) => x.to_f64(),
        }
    }

    pub fn floor(&self) -> Integer {
        match self {
            Param::Rational(r) => r.clone().floor().numer().clone(),
            Param::Real(x) => x.clone().floor().to_integer().unwrap_or_default(),
        }
    }

    /// x - floor(x), in [0, 1).
    pub fn frac(&self) -> Param {
        let f = self.floor();
        self.sub(&Param::Rational(Rational::from(f)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Param::Rational(r) => r.cmp0() == std::cmp::Ordering::Equal,
            Param::Real(x) => x.is_zero(),
        }
    }

    fn prec_of(&self) -> Option<u32> {
        match self {
            Param::Rational(_) => None,
            Param::Real(x) => Some(x.prec()),
        }
    }

    fn combine(&self, o: &Param, fr: impl Fn(&Rational, &Rational) -> Rational, ff: impl Fn(&Float, &Float, u32) -> Float) -> Param {
        match (self, o) {
            (Param::Rational(a), Param::Rational(b)) => Param::Rational(fr(a, b)),
            _ => {
                let p = self.prec_of().unwrap_or(0).max(o.prec_of().unwrap_or(0)).max(64);
                Param::Real(ff(&self.to_float(p), &o.to_float(p), p))
            }
        }
    }

    pub fn add(&self, o: &Param) -> Param {
        self.combine(o, |a, b| Rational::from(a + b), |a, b, p| Float::with_val(p, a + b))
    }

    pub fn sub(&self, o: &Param) -> Param {
        self.combine(o, |a, b| Rational::from(a - b), |a, b, p| Float::with_val(p, a - b))
    }

    pub fn mul(&self, o: &Param) -> Param {
        self.combine(o, |a, b| Rational::from(a * b), |a, b, p| Float::with_val(p, a * b))
    }

    pub fn neg(&self) -> Param {
        match self {
            Param::Rational(r) => Param::Rational(Rational::from(-r)),
            Param::Real(x) => Param::Real(Float::with_val(x.prec(), -x)),
        }
    }

    pub fn add_int(&self, n: i64) -> Param {
        self.add(&Param::int(n))
    }

    pub fn mul_int(&self, n: i64) -> Param {
        self.mul(&Param::int(n))
    }

    /// 1 - x
    pub fn one_minus(&self) -> Param {
        Param::int(1).sub(self)
    }

    pub fn cmp_int(&self, n: i64) -> std::cmp::Ordering {
        match self {
            Param::Rational(r) => r.partial_cmp(&n).expect("rational comparison"),
            Param::Real(x) => x.partial_cmp(&n).unwrap_or(std::cmp::Ordering::Equal),
        }
    }

    pub fn in_open_unit_interval(&self) -> bool {
        self.cmp_int(0).is_gt() && self.cmp_int(1).is_lt()
    }

    pub fn in_closed_unit_interval(&self) -> bool {
        !self.cmp_int(0).is_lt() && !self.cmp_int(1).is_gt()
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Rational(r) => write!(f, "{r}"),
            Param::Real(x) => write!(f, "{}", crate::numerics::float_to_decimal(x, 20)),
        }
    }
}

impl From<i64> for Param {
    fn from(n: i64) -> Self {
        Param::int(n)
    }
}

impl From<Rational> for Param {
    fn from(r: Rational) -> Self {
        Param::Rational(r)
    }
}

/// e^{2πi r}; exact reduction mod 1 for rationals, exact values at quarter turns.
pub fn turn(r: &Param, prec: u32) -> ComplexValue {
    let f = r.frac();
    if let Param::Rational(q) = &f {
        let four = Rational::from(q * 4u32);
        if four.denom() == &1 {
            let k = four.numer().to_u32().unwrap_or(0);
            return match k {
                0 => ComplexValue::one(prec),
                1 => ComplexValue::i(prec),
                2 => ComplexValue::from_f64(-1.0, 0.0, prec),
                _ => ComplexValue::from_f64(0.0, -1.0, prec),
            };
        }
    }
    let x = f.to_float(prec + 4);
    let theta = Float::with_val(prec + 4, Constant::Pi) * 2u32 * x;
    ComplexValue::expi(&theta).with_prec(prec)
}
