//! Zeros of p_n and q_n: exact Sturm isolation on the critical line, with an
//! independent simultaneous iteration in the complex plane as a cross-check.

use rug::float::Constant;
use rug::{Complete, Float, Integer, Rational};

use super::poly::{poly_family, Family, IntPolynomial};
use crate::error::{Error, Result};
use crate::numerics::{ComplexValue, PrecisionContext};

/// A zero s = 1/2 + ix with |x - x_mid| ≤ radius.
#[derive(Debug, Clone)]
pub struct CriticalZero {
    pub x: Float,
    pub radius: f64,
}

impl CriticalZero {
    pub fn to_complex(&self) -> ComplexValue {
        let prec = self.x.prec();
        ComplexValue::from_floats(Float::with_val(prec, 0.5), self.x.clone())
    }
}

/// R(u) = i^{-d} 2^d p((1 + iu)/2) for p of degree d with p(1 - s) = ±p(s).
///
/// The reflection symmetry makes R real, with integer coefficients; its real
/// zeros u give the zeros s = 1/2 + iu/2 of p.
pub fn critical_line_form(p: &IntPolynomial) -> Result<IntPolynomial> {
    let d = p.degree().ok_or_else(|| Error::RootIsolationFailure("zero polynomial".into()))?;
    let (mut re, mut im) = (vec![Integer::new(); d + 1], vec![Integer::new(); d + 1]);
    // pw = (1 + iu)^j as a pair of real polynomials
    let (mut pr, mut pi) = (vec![Integer::from(1)], vec![Integer::new()]);
    for (j, c) in p.coefficients().iter().enumerate() {
        let w = Integer::from(c << (d - j) as u32);
        for (k, v) in pr.iter().enumerate() {
            re[k] += (&w * v).complete();
        }
        for (k, v) in pi.iter().enumerate() {
            im[k] += (&w * v).complete();
        }
        // (A + iB)(1 + iu) = (A - uB) + i(B + uA)
        let mut nr = pr.clone();
        nr.push(Integer::new());
        let mut ni = pi.clone();
        ni.push(Integer::new());
        for k in 0..pr.len() {
            nr[k + 1] -= &pi[k];
            ni[k + 1] += &pr[k];
        }
        pr = nr;
        pi = ni;
    }
    let neg = |v: Vec<Integer>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
    let (real, rest) = match d % 4 {
        0 => (re, im),
        1 => (im, re),
        2 => (neg(re), im),
        _ => (neg(im), re),
    };
    if rest.iter().any(|x| *x != 0) {
        return Err(Error::RootIsolationFailure("polynomial is not symmetric under s -> 1 - s".into()));
    }
    Ok(IntPolynomial::new(real))
}

type RPoly = Vec<Rational>;

fn trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

fn rem(a: &RPoly, b: &RPoly) -> RPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let q = Rational::from(r.last().expect("nonempty") / &lead);
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= Rational::from(&q * c);
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Divides by the absolute value of the leading coefficient; positive scaling
/// leaves the sign pattern untouched.
fn normalize(p: RPoly) -> RPoly {
    let lead = p.last().expect("nonempty").clone().abs();
    p.into_iter().map(|c| c / &lead).collect()
}

fn eval_sign(p: &RPoly, x: &Rational) -> i32 {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc.cmp0() as i32
}

struct Sturm {
    seq: Vec<RPoly>,
}

impl Sturm {
    fn new(p: &IntPolynomial) -> Result<Self> {
        let p0: RPoly = p.coefficients().iter().map(Rational::from).collect();
        let p1: RPoly = p.derivative().coefficients().iter().map(Rational::from).collect();
        let mut seq = vec![normalize(p0)];
        if !p1.is_empty() {
            seq.push(normalize(p1));
        }
        while seq.len() >= 2 {
            let r = rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(normalize(r.into_iter().map(|c| -c).collect()));
        }
        if seq.last().map_or(0, |l| l.len()) > 1 {
            return Err(Error::RootIsolationFailure("polynomial has repeated roots".into()));
        }
        Ok(Sturm { seq })
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self.seq.iter().map(|p| eval_sign(p, x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in (lo, hi].
    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// Splits (lo, hi] into intervals holding one root each; endpoints are never roots.
fn isolate(st: &Sturm, lo: Rational, hi: Rational, out: &mut Vec<(Rational, Rational)>) {
    match st.count(&lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let width = Rational::from(&hi - &lo);
            let mid = [8, 9, 7, 10, 6, 11, 5]
                .iter()
                .map(|&k| Rational::from(&lo + Rational::from(&width * Rational::from((k, 17)))))
                .find(|m| eval_sign(&st.seq[0], m) != 0)
                .expect("a polynomial has finitely many roots");
            isolate(st, lo, mid.clone(), out);
            isolate(st, mid, hi, out);
        }
    }
}

fn eval_float(p: &IntPolynomial, x: &Float) -> Float {
    let prec = x.prec();
    let mut acc = Float::with_val(prec, 0);
    for c in p.coefficients().iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Real roots of an integer polynomial with simple roots, each to within
/// 2^{-prec} relative width, in increasing order.
pub fn real_roots(p: &IntPolynomial, prec: u32) -> Result<Vec<(Float, f64)>> {
    let d = p.degree().ok_or_else(|| Error::RootIsolationFailure("zero polynomial".into()))?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let st = Sturm::new(p)?;
    // Cauchy bound 1 + max |a_i / a_d|, rounded up to an integer
    let lead = p.leading().expect("nonzero").clone().abs();
    let mut bound = Integer::from(1);
    for c in &p.coefficients()[..d] {
        let (q, _) = c.clone().abs().div_rem_ceil(lead.clone());
        bound = bound.max(q + 1u32);
    }
    let bound = Rational::from(bound + 1u32);
    let mut intervals = Vec::new();
    isolate(&st, Rational::from(-&bound), bound, &mut intervals);
    let mut out = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        let s_lo = eval_sign(&st.seq[0], &lo);
        let s_hi = eval_sign(&st.seq[0], &hi);
        let mut lo = Float::with_val(prec, &lo);
        let mut hi = Float::with_val(prec, &hi);
        if s_lo * s_hi >= 0 {
            return Err(Error::RootIsolationFailure("isolating interval without a sign change".into()));
        }
        // bisection is slow but never leaves the certified interval
        let scale = lo.to_f64().abs().max(hi.to_f64().abs()).max(1.0);
        let tol = Float::with_val(prec, scale) >> (prec - 4);
        for _ in 0..(4 * prec) {
            if Float::with_val(prec, &hi - &lo) <= tol {
                break;
            }
            let mid = Float::with_val(prec, &lo + &hi) / 2u32;
            let sm = eval_float(p, &mid).cmp0().map_or(0, |o| o as i32);
            if sm == 0 {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if sm == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let radius = Float::with_val(prec, &hi - &lo).to_f64() / 2.0;
        out.push((Float::with_val(prec, &lo + &hi) / 2u32, radius * (1.0 + 1e-12)));
    }
    if out.len() != d {
        return Err(Error::RootIsolationFailure(format!("found {} real roots of a degree-{d} polynomial", out.len())));
    }
    Ok(out)
}

/// Zeros of p_n or q_n as points 1/2 + ix, ordered by x.
///
/// Every zero is certified to lie on the critical line: the substitution
/// s = 1/2 + iu/2 turns the polynomial into a real one whose n real roots are
/// isolated exactly by Sturm sequences and then refined by bisection.
pub fn critical_zeros(family: Family, n: u32, ctx: &PrecisionContext) -> Result<Vec<CriticalZero>> {
    if n == 0 {
        return Err(Error::DomainError("p_0 and q_0 are constant".into()));
    }
    let r = critical_line_form(&poly_family(family, n))?;
    let prec = ctx.internal_bits();
    Ok(real_roots(&r, prec)?
        .into_iter()
        .map(|(u, rad)| CriticalZero { x: u / 2u32, radius: rad / 2.0 })
        .collect())
}

/// All n zeros of p_n or q_n.
pub fn poly_zeros(family: Family, n: u32, ctx: &PrecisionContext) -> Result<Vec<ComplexValue>> {
    Ok(critical_zeros(family, n, ctx)?.iter().map(|z| z.to_complex().with_prec(ctx.working_bits() + ctx.guard_bits())).collect())
}

/// Zeros of an integer polynomial by the Aberth–Ehrlich simultaneous iteration
/// in the complex plane, with no assumption about where they lie.
pub fn aberth_zeros(p: &IntPolynomial, prec: u32) -> Result<Vec<ComplexValue>> {
    let d = p.degree().ok_or_else(|| Error::RootIsolationFailure("zero polynomial".into()))?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let lead = p.leading().expect("nonzero").to_f64().abs();
    let radius = p.coefficients()[..d].iter().map(|c| c.to_f64().abs() / lead).fold(0.0, f64::max) + 1.0;
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut z: Vec<ComplexValue> = (0..d)
        .map(|k| {
            let theta = Float::with_val(prec, &two_pi * (k as f64 + 0.4)) / d as u32;
            ComplexValue::expi(&theta).scale_f64(radius).add_f64(0.5)
        })
        .collect();
    let done = radius.max(1.0) * 2f64.powi(-(prec as i32) + 16);
    for _ in 0..(50 * d + 200) {
        let mut step = 0.0f64;
        for k in 0..d {
            let v = p.eval(&z[k]);
            if v.is_zero() {
                continue;
            }
            let ratio = &v / &dp.eval(&z[k]);
            let mut sum = ComplexValue::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    sum = &sum + &(&z[k] - zj).recip();
                }
            }
            let denom = (-&(&ratio * &sum)).add_f64(1.0);
            let w = &ratio / &denom;
            step = step.max(w.abs_f64());
            z[k] = &z[k] - &w;
        }
        if !step.is_finite() {
            break;
        }
        if step <= done {
            z.sort_by(|a, b| a.im.partial_cmp(&b.im).expect("finite"));
            return Ok(z);
        }
    }
    Err(Error::RootIsolationFailure(format!("simultaneous iteration did not converge for degree {d}")))
}
