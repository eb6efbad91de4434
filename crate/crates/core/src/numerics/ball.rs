use rug::Float;

use super::complex::ComplexValue;

fn up(x: f64) -> f64 {
    x * (1.0 + 8.0 * f64::EPSILON)
}

/// Rounding contribution of a correctly rounded complex result at `prec` bits.
pub(crate) fn ulp_bound(mid: &ComplexValue) -> f64 {
    let p = mid.prec() as i32;
    up(mid.abs_f64() * 2f64.powi(2 - p))
}

/// A complex midpoint with an absolute radius.
#[derive(Clone, Debug)]
pub struct Ball {
    pub mid: ComplexValue,
    pub rad: f64,
}

impl Ball {
    pub fn exact(mid: ComplexValue) -> Self {
        Ball { mid, rad: 0.0 }
    }

    pub fn new(mid: ComplexValue, rad: f64) -> Self {
        Ball { mid, rad }
    }

    pub fn zero(prec: u32) -> Self {
        Ball::exact(ComplexValue::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Ball::exact(ComplexValue::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn abs_upper(&self) -> f64 {
        up(self.mid.abs_f64() + self.rad)
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let mid = &self.mid + &o.mid;
        let rad = up(self.rad + o.rad + ulp_bound(&mid));
        Ball { mid, rad }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        let mid = &self.mid - &o.mid;
        let rad = up(self.rad + o.rad + ulp_bound(&mid));
        Ball { mid, rad }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let mid = &self.mid * &o.mid;
        let a = self.mid.abs_f64();
        let b = o.mid.abs_f64();
        let rad = up(a * o.rad + b * self.rad + self.rad * o.rad + ulp_bound(&mid));
        Ball { mid, rad }
    }

    pub fn div(&self, o: &Ball) -> Ball {
        let mid = &self.mid / &o.mid;
        let b = o.mid.abs_f64();
        let q = mid.abs_f64();
        let rad = if b > o.rad {
            up((self.rad + q * o.rad) / (b - o.rad) + ulp_bound(&mid))
        } else {
            f64::INFINITY
        };
        Ball { mid, rad }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad }
    }

    pub fn mul_i(&self) -> Ball {
        Ball { mid: self.mid.mul_i(), rad: self.rad }
    }

    /// Multiplication by an exactly known real.
    pub fn scale(&self, k: &Float) -> Ball {
        let mid = self.mid.scale(k);
        let rad = up(self.rad * k.to_f64().abs() + ulp_bound(&mid));
        Ball { mid, rad }
    }

    pub fn mul_value(&self, v: &ComplexValue) -> Ball {
        self.mul(&Ball::exact(v.clone()))
    }

    pub fn add_value(&self, v: &ComplexValue) -> Ball {
        self.add(&Ball::exact(v.clone()))
    }

    pub fn exp(&self) -> Ball {
        let mid = self.mid.exp();
        let m = mid.abs_f64();
        let rad = up(m * (self.rad.exp_m1()) + ulp_bound(&mid) * 2.0);
        Ball { mid, rad }
    }

    pub fn inflate(&self, extra: f64) -> Ball {
        Ball { mid: self.mid.clone(), rad: up(self.rad + extra) }
    }

    pub fn with_prec(&self, prec: u32) -> Ball {
        let mid = self.mid.with_prec(prec);
        let rad = if prec < self.prec() { up(self.rad + ulp_bound(&mid)) } else { self.rad };
        Ball { mid, rad }
    }

    pub fn into_result(self) -> EvalResult {
        EvalResult { value: self.mid, err_bound: self.rad, pole: None }
    }
}

/// Location and residue of a simple pole.
#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub location: ComplexValue,
    pub residue: ComplexValue,
}

/// Value with absolute error bound and optional pole descriptor.
///
/// When `pole` is present, `value` is the finite part left after removing
/// `residue / (s - location)`.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub err_bound: f64,
    pub pole: Option<Pole>,
}

impl EvalResult {
    pub fn ball(&self) -> Ball {
        Ball::new(self.value.clone(), self.err_bound)
    }

    pub fn with_pole(mut self, pole: Pole) -> Self {
        self.pole = Some(pole);
        self
    }

    pub fn re_f64(&self) -> f64 {
        self.value.re.to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.value.im.to_f64()
    }
}

impl From<Ball> for EvalResult {
    fn from(b: Ball) -> Self {
        b.into_result()
    }
}
