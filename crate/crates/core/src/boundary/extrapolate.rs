use rug::Float;

use crate::numerics::ComplexValue;

/// Value at x = 0 of the polynomial through (xs[i], ys[i]) (Neville's scheme).
///
/// With geometric nodes xs = 2^{-k} this is Richardson extrapolation to all
/// orders; it removes every integer power of x from a smooth remainder.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[ComplexValue]) -> ComplexValue {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let mut p: Vec<ComplexValue> = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            // P(0) = (x_i P_{i+1..} - x_j P_{i..}) / (x_i - x_j)
            let prec = p[i].prec();
            let num = &p[i + 1].scale_f64(xi) - &p[i].scale_f64(xj);
            let d = Float::with_val(prec, xi) - Float::with_val(prec, xj);
            p[i] = num.scale(&d.recip());
        }
    }
    p.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_polynomial_constant() {
        let xs: Vec<f64> = (3..9).map(|k| 2f64.powi(-k)).collect();
        let ys: Vec<ComplexValue> = xs
            .iter()
            .map(|&x| ComplexValue::from_f64(1.5 + 2.0 * x - 7.0 * x * x + x.powi(5), -0.25 + x.powi(3), 128))
            .collect();
        let v = extrapolate_to_zero(&xs, &ys);
        assert!((v.re.to_f64() - 1.5).abs() < 1e-25);
        assert!((v.im.to_f64() + 0.25).abs() < 1e-25);
    }
}
