use std::fmt;
use std::str::FromStr;

use rug::{Complete, Integer};

use crate::error::{Error, Result};
use crate::numerics::ComplexValue;

/// Polynomial with exact integer coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[Integer], i: usize| v.get(i).cloned().unwrap_or_default();
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&o.coeffs, i)).collect())
    }

    pub fn sub(&self, o: &IntPolynomial) -> IntPolynomial {
        self.add(&o.scale(&Integer::from(-1)))
    }

    pub fn scale(&self, k: &Integer) -> IntPolynomial {
        Self::new(self.coeffs.iter().map(|c| (c * k).complete()).collect())
    }

    /// (c0 + c1 s) p(s).
    pub fn mul_linear(&self, c0: i64, c1: i64) -> IntPolynomial {
        let mut out = vec![Integer::new(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += (c * c0).complete();
            out[i + 1] += (c * c1).complete();
        }
        Self::new(out)
    }

    /// p(c0 + c1 s), by Horner's scheme on polynomials.
    fn compose_linear(&self, c0: i64, c1: i64) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_linear(c0, c1).add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    /// p(s + k).
    pub fn shift(&self, k: i64) -> IntPolynomial {
        self.compose_linear(k, 1)
    }

    /// p(1 - s).
    pub fn reflect(&self) -> IntPolynomial {
        self.compose_linear(1, -1)
    }

    /// Whether p(1 - s) = sign · p(s) holds coefficientwise.
    pub fn satisfies_reflection(&self, sign: i32) -> bool {
        self.reflect() == self.scale(&Integer::from(sign))
    }

    pub fn derivative(&self) -> IntPolynomial {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| (c * i as u64).complete()).collect())
    }

    /// Horner evaluation at the precision of `s`.
    pub fn eval(&self, s: &ComplexValue) -> ComplexValue {
        let prec = s.prec();
        let mut acc = ComplexValue::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = (&acc * s).add_real(&rug::Float::with_val(prec, c));
        }
        acc
    }

    /// Σ |c_j| r^j, an upper bound for |p(s)| on |s| ≤ r.
    pub fn abs_bound(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.to_f64().abs())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = c.clone().abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = i == 0 || mag != 1;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("s")?,
                _ => write!(f, "s^{i}")?,
            }
        }
        Ok(())
    }
}

/// The two polynomial families: p_n belongs to φ_{2n}, q_n to φ_{2n+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    P,
    Q,
}

impl Family {
    /// λ in the orthogonality weight |Γ(λ + ix/2)|².
    pub fn weight_shift(self) -> f64 {
        match self {
            Family::P => 0.25,
            Family::Q => 0.75,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::P => "p",
            Family::Q => "q",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "P" => Ok(Family::P),
            "q" | "Q" => Ok(Family::Q),
            _ => Err(Error::DomainError(format!("unknown polynomial family '{s}' (expected p or q)"))),
        }
    }
}

/// p_n and q_n by the coupled recurrences
/// p_{n+1}(s) = s q_n(s+1) + (s-1) q_n(s-1), q_{n+1}(s) = p_{n+1}(s+1) + p_{n+1}(s-1).
pub fn poly_family(family: Family, n: u32) -> IntPolynomial {
    let (mut p, mut q) = (IntPolynomial::one(), IntPolynomial::one());
    for _ in 0..n {
        p = q.shift(1).mul_linear(0, 1).add(&q.shift(-1).mul_linear(-1, 1));
        q = p.shift(1).add(&p.shift(-1));
    }
    match family {
        Family::P => p,
        Family::Q => q,
    }
}

/// The same families from the three-term recurrences
/// p_{n+1}(s) = s p_n(s+2) + (2s-1) p_n(s) + (s-1) p_n(s-2) and
/// q_{n+1}(s) = (s+1) q_n(s+2) + (2s-1) q_n(s) + (s-2) q_n(s-2).
///
/// The p recurrence starts from p_1 = 2s - 1: applied to p_0 = 1 it yields
/// 4s - 2, because p_0 carries half the normalization of the later p_n.
pub fn poly_family_three_term(family: Family, n: u32) -> IntPolynomial {
    // (coefficients of the s+2 and s-2 multipliers, first index, first polynomial)
    let (up, down, start, first) = match family {
        Family::P => ((0, 1), (-1, 1), 1, IntPolynomial::from_i64(&[-1, 2])),
        Family::Q => ((1, 1), (-2, 1), 0, IntPolynomial::one()),
    };
    if n < start {
        return IntPolynomial::one();
    }
    let mut cur = first;
    for _ in start..n {
        let a = cur.shift(2).mul_linear(up.0, up.1);
        let b = cur.mul_linear(-1, 2);
        let c = cur.shift(-2).mul_linear(down.0, down.1);
        cur = a.add(&b).add(&c);
    }
    cur
}
