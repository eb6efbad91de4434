use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

/// Complex number with MPFR real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexValue {
    pub re: Float,
    pub im: Float,
}

impl ComplexValue {
    pub fn zero(prec: u32) -> Self {
        ComplexValue { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexValue { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: &Float) -> Self {
        let prec = re.prec();
        ComplexValue { re: re.clone(), im: Float::new(prec) }
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        ComplexValue { re, im }
    }

    /// Copy rounded (or widened) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexValue { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Returns `Some(n)` when the value is exactly the real integer `n`.
    pub fn as_exact_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().and_then(|n| n.to_i64())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        ComplexValue { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        ComplexValue { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let p = self.prec();
        ComplexValue { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        ComplexValue { re: Float::with_val(p, &self.re + k), im: Float::with_val(p, &self.im) }
    }

    pub fn add_f64(&self, k: f64) -> Self {
        let p = self.prec();
        ComplexValue { re: Float::with_val(p, &self.re + k), im: self.im.clone() }
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        ComplexValue { re: Float::with_val(self.im.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        ComplexValue::one(self.prec()) / self
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        ComplexValue { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        ComplexValue { re: Float::with_val(p, self.abs().ln_ref()), im: self.arg() }
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let half = self.ln().scale_f64(0.5);
        half.exp()
    }

    /// `e^{i theta}` for real theta.
    pub fn expi(theta: &Float) -> Self {
        let p = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        ComplexValue { re: c, im: s }
    }

    /// `t^w = exp(w ln t)` for real t > 0.
    pub fn real_pow(t: &Float, w: &ComplexValue) -> Self {
        let p = t.prec().max(w.prec());
        let lt = Float::with_val(p, t.ln_ref());
        w.scale(&lt).exp()
    }

    /// Power with a complex exponent of a real positive base given by its logarithm.
    pub fn pow_from_ln(ln_t: &Float, w: &ComplexValue) -> Self {
        w.scale(ln_t).exp()
    }

    pub fn sin(&self) -> Self {
        // sin(x+iy) = sin x cosh y + i cos x sinh y
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let sh = Float::with_val(p, self.im.sinh_ref());
        let ch = Float::with_val(p, self.im.cosh_ref());
        ComplexValue { re: Float::with_val(p, &s * &ch), im: Float::with_val(p, &c * &sh) }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let sh = Float::with_val(p, self.im.sinh_ref());
        let ch = Float::with_val(p, self.im.cosh_ref());
        ComplexValue { re: Float::with_val(p, &c * &ch), im: Float::with_val(p, -(s * sh)) }
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// Distance to the nearest point of a real integer, with that integer.
    pub fn nearest_integer(&self) -> (i64, f64) {
        let r = self.re.to_f64().round();
        let d = (self.re.to_f64() - r).hypot(self.im.to_f64());
        (r as i64, d)
    }

    /// Decimal rendering `re im` with `digits` significant digits each.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (float_to_decimal(&self.re, digits), float_to_decimal(&self.im, digits))
    }
}

/// Scientific decimal representation suitable for JSON numbers.
pub fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let raw = x.to_string_radix(10, Some(digits.max(2)));
    // rug renders as "d.ddde<exp>"; small exponents are written out positionally
    let (mant, exp) = match raw.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (raw.as_str(), 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int_part}{frac_part}");
    let all = all.trim_end_matches('0');
    let all = if all.is_empty() { "0" } else { all };
    // decimal point sits after `point` digits of `all`
    let point = int_part.len() as i64 + exp;
    let body = if (-5..=21).contains(&point) {
        if point <= 0 {
            format!("0.{}{all}", "0".repeat((-point) as usize))
        } else if point as usize >= all.len() {
            format!("{all}{}", "0".repeat(point as usize - all.len()))
        } else {
            format!("{}.{}", &all[..point as usize], &all[point as usize..])
        }
    } else {
        let (lead, rest) = all.split_at(1);
        let e = point - 1;
        if rest.is_empty() {
            format!("{lead}e{e}")
        } else {
            format!("{lead}.{rest}e{e}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_decimal_pair(20);
        if i.starts_with('-') {
            write!(f, "{r}{i}i")
        } else {
            write!(f, "{r}+{i}i")
        }
    }
}

fn binop_prec(a: &ComplexValue, b: &ComplexValue) -> u32 {
    a.prec().max(b.prec())
}

impl<'a, 'b> Add<&'b ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn add(self, o: &'b ComplexValue) -> ComplexValue {
        let p = binop_prec(self, o);
        ComplexValue { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a, 'b> Sub<&'b ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn sub(self, o: &'b ComplexValue) -> ComplexValue {
        let p = binop_prec(self, o);
        ComplexValue { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a, 'b> Mul<&'b ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn mul(self, o: &'b ComplexValue) -> ComplexValue {
        let p = binop_prec(self, o);
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        ComplexValue { re: Float::with_val(p, &rr - &ii), im: Float::with_val(p, &ri + &ir) }
    }
}

impl<'a, 'b> Div<&'b ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn div(self, o: &'b ComplexValue) -> ComplexValue {
        let p = binop_prec(self, o) + 8;
        // Smith's algorithm keeps intermediate magnitudes tame.
        let out = if o.re.clone().abs() >= o.im.clone().abs() {
            let r = Float::with_val(p, &o.im / &o.re);
            let den = Float::with_val(p, &o.re + Float::with_val(p, &o.im * &r));
            let re = Float::with_val(p, &self.re + Float::with_val(p, &self.im * &r)) / &den;
            let im = Float::with_val(p, &self.im - Float::with_val(p, &self.re * &r)) / &den;
            ComplexValue { re, im }
        } else {
            let r = Float::with_val(p, &o.re / &o.im);
            let den = Float::with_val(p, &o.im + Float::with_val(p, &o.re * &r));
            let re = Float::with_val(p, Float::with_val(p, &self.re * &r) + &self.im) / &den;
            let im = Float::with_val(p, Float::with_val(p, &self.im * &r) - &self.re) / &den;
            ComplexValue { re, im }
        };
        out.with_prec(p - 8)
    }
}

impl<'a> Neg for &'a ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ComplexValue> for ComplexValue {
            type Output = ComplexValue;
            fn $m(self, o: ComplexValue) -> ComplexValue {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b ComplexValue> for ComplexValue {
            type Output = ComplexValue;
            fn $m(self, o: &'b ComplexValue) -> ComplexValue {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<ComplexValue> for &'a ComplexValue {
            type Output = ComplexValue;
            fn $m(self, o: ComplexValue) -> ComplexValue {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        -&self
    }
}
