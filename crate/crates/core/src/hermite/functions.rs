use rug::float::Constant;
use rug::{Float, Integer};

/// φ_n(x) = H_n(√(2π) x) e^{-πx²}, the n-th power of the raising operator applied to e^{-πx²}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermiteGaussian {
    pub n: u32,
}

/// Coefficients of the physicists' Hermite polynomial H_n, ascending.
pub fn hermite_coefficients(n: u32) -> Vec<Integer> {
    let mut prev = vec![Integer::from(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Integer::from(0), Integer::from(2)];
    for k in 1..n {
        // H_{k+1} = 2y H_k - 2k H_{k-1}
        let mut next = vec![Integer::new(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += Integer::from(c * 2u32);
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= Integer::from(c * (2 * k));
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

impl HermiteGaussian {
    pub fn new(n: u32) -> Self {
        HermiteGaussian { n }
    }

    /// H_n(y) by the three-term recurrence.
    pub fn hermite_poly(n: u32, y: &Float, prec: u32) -> Float {
        let mut h0 = Float::with_val(prec, 1);
        if n == 0 {
            return h0;
        }
        let mut h1 = Float::with_val(prec, y * 2u32);
        for k in 1..n {
            let next = Float::with_val(prec, Float::with_val(prec, y * &h1) * 2u32) - Float::with_val(prec, &h0 * (2 * k));
            h0 = std::mem::replace(&mut h1, next);
        }
        h1
    }

    pub fn eval(&self, x: &Float, prec: u32) -> Float {
        let pi = Float::with_val(prec, Constant::Pi);
        let y = Float::with_val(prec, Float::with_val(prec, &pi * 2u32).sqrt()) * x;
        let g = Float::with_val(prec, -(pi * Float::with_val(prec, x.square_ref()))).exp();
        Self::hermite_poly(self.n, &y, prec) * g
    }

    /// φ_n'(x) = (2n√(2π) H_{n-1}(y) - 2πx H_n(y)) e^{-πx²} with y = √(2π)x.
    pub fn derivative(&self, x: &Float, prec: u32) -> Float {
        let pi = Float::with_val(prec, Constant::Pi);
        let root = Float::with_val(prec, Float::with_val(prec, &pi * 2u32).sqrt());
        let y = Float::with_val(prec, &root * x);
        let g = Float::with_val(prec, -(Float::with_val(prec, &pi * Float::with_val(prec, x.square_ref())))).exp();
        let mut v = -(Float::with_val(prec, &pi * 2u32) * x * Self::hermite_poly(self.n, &y, prec));
        if self.n > 0 {
            v += root * (2 * self.n) * Self::hermite_poly(self.n - 1, &y, prec);
        }
        v * g
    }

    /// A constant C with |φ_n(x)| ≤ C e^{-πx²/2} for all real x.
    ///
    /// Uses |y|^k e^{-y²/4} ≤ (2k/e)^{k/2} termwise on the coefficients of H_n.
    pub fn envelope_constant(&self) -> f64 {
        hermite_coefficients(self.n)
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let m = if k == 0 { 1.0 } else { (2.0 * k as f64 / std::f64::consts::E).powf(k as f64 / 2.0) };
                c.to_f64().abs() * m
            })
            .sum::<f64>()
            * (1.0 + 1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_hermite_coefficients() {
        let h3: Vec<i64> = hermite_coefficients(3).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(h3, vec![0, -12, 0, 8]);
        let h4: Vec<i64> = hermite_coefficients(4).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(h4, vec![12, 0, -48, 0, 16]);
    }

    #[test]
    fn recurrence_matches_coefficients() {
        let prec = 128;
        let y = Float::with_val(prec, 0.37);
        for n in 0..10 {
            let direct = HermiteGaussian::hermite_poly(n, &y, prec);
            let mut horner = Float::with_val(prec, 0);
            for c in hermite_coefficients(n).iter().rev() {
                horner = horner * &y + c;
            }
            assert!(Float::with_val(prec, &direct - &horner).abs().to_f64() < 1e-30);
        }
    }

    #[test]
    fn oscillator_eigenvalue() {
        // (-(1/2π) d²/dx² + 2πx²) φ_n = (2n + 1) φ_n
        let prec = 256;
        let h = Float::with_val(prec, 1e-20);
        for n in 0..6 {
            let f = HermiteGaussian::new(n);
            for x in [0.1, 0.45, 1.3] {
                let x = Float::with_val(prec, x);
                let fm = f.eval(&Float::with_val(prec, &x - &h), prec);
                let f0 = f.eval(&x, prec);
                let fp = f.eval(&Float::with_val(prec, &x + &h), prec);
                let d2 = (fp - Float::with_val(prec, &f0 * 2u32) + fm) / Float::with_val(prec, h.square_ref());
                let pi = Float::with_val(prec, Constant::Pi);
                let lhs = -d2 / Float::with_val(prec, &pi * 2u32) + Float::with_val(prec, &pi * 2u32) * Float::with_val(prec, x.square_ref()) * &f0;
                let rhs = Float::with_val(prec, &f0 * (2 * n + 1));
                assert!(Float::with_val(prec, lhs - rhs).abs().to_f64() < 1e-15, "n = {n}");
            }
        }
    }

    #[test]
    fn envelope_holds_on_grid() {
        for n in 0..12 {
            let f = HermiteGaussian::new(n);
            let c = f.envelope_constant();
            for i in 0..400 {
                let x = i as f64 * 0.02;
                let v = f.eval(&Float::with_val(64, x), 64).to_f64().abs();
                assert!(v <= c * (-std::f64::consts::PI * x * x / 2.0).exp() * (1.0 + 1e-9));
            }
        }
    }
}
