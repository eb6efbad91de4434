use super::*;
use crate::lerch::{lhat_star, LerchPoint};
use crate::numerics::{upper_incomplete_gamma, Sign};
use rug::float::Constant;
use std::sync::Arc;

fn ctx() -> PrecisionContext {
    PrecisionContext::with_bits(96).unwrap()
}

fn x(v: f64) -> Float {
    Float::with_val(160, v)
}

#[test]
fn gaussian_lattice_sum() {
    let r = averaged_kernel(&TestFunction::hermite(0), &Param::int(0), &Param::int(0), &x(1.0), &ctx()).unwrap();
    let want = Float::with_val(192, Float::parse("1.0864348112133080145753161215102234570702057072452").unwrap());
    assert!((r.value.re - want).abs().to_f64() < 1e-27);
}

#[test]
fn odd_function_lattice_sum_vanishes() {
    let r = averaged_kernel(&TestFunction::hermite(1), &Param::int(0), &Param::int(0), &x(0.7), &ctx()).unwrap();
    assert!(r.value.abs_f64() < 1e-27);
}

#[test]
fn poisson_summation() {
    let cases = [
        (TestFunction::hermite(0), Param::int(0), Param::int(0), 0.5),
        (TestFunction::modulated_gaussian(0.25), Param::ratio(1, 3), Param::ratio(2, 5), 0.8),
        (TestFunction::hermite(3), Param::ratio(-2, 7), Param::ratio(9, 4), 1.3),
        (TestFunction::dilated_gaussian(2.0), Param::ratio(1, 2), Param::ratio(1, 5), 0.6),
    ];
    for (f, a, c, xv) in cases {
        let lhs = averaged_kernel(&f, &a, &c, &x(xv), &ctx()).unwrap();
        let rhs = poisson_dual(&f, &a, &c, &x(xv), &ctx()).unwrap();
        let d = (&lhs.value - &rhs.value).abs_f64();
        assert!(d <= lhs.err_bound + rhs.err_bound + 1e-27, "{}: {d:e}", f.name());
    }
}

/// Σ_{n+c≠0} e^{2πia(n+c/2)} ½ π^{-s/2} |t|^{-s} Γ(s/2, πt²).
fn gaussian_phi_closed_form(s: &ComplexValue, a: &Param, c: &Param) -> ComplexValue {
    let ctx = PrecisionContext::with_bits(128).unwrap();
    let prec = 192;
    let pi = Float::with_val(prec, Constant::Pi);
    let alpha = s.scale_f64(0.5);
    let mut acc = ComplexValue::zero(prec);
    for n in -20..=20 {
        let t = c.add_int(n);
        if t.is_zero() {
            continue;
        }
        let tf = Float::with_val(prec, t.to_float(prec).abs_ref());
        let xarg = Float::with_val(prec, &pi * Float::with_val(prec, tf.square_ref()));
        let g = upper_incomplete_gamma(&alpha, &xarg, &ctx).unwrap().value;
        let lt = Float::with_val(prec, tf.ln_ref());
        let lp = Float::with_val(prec, pi.ln_ref());
        let w = (-&s.scale(&lt)).add_f64(0.0);
        let pw = (&w - &alpha.scale(&lp)).exp();
        let ph = turn(&a.mul(&t.sub(&c.mul(&Param::ratio(1, 2)))), prec);
        acc = &acc + &(&(&g * &pw) * &ph).scale_f64(0.5);
    }
    acc
}

#[test]
fn gaussian_phi_matches_incomplete_gamma() {
    let s = ComplexValue::from_f64(0.7, 2.0, 160);
    let (a, c) = (Param::ratio(1, 3), Param::ratio(2, 5));
    let r = phi_integral(&TestFunction::hermite(0), &s, &a, &c, &ctx()).unwrap();
    let want = gaussian_phi_closed_form(&s, &a, &c);
    let d = (&r.value.with_prec(192) - &want).abs_f64();
    assert!(d < 1e-26, "{d:e}");
    assert!(r.pole.is_none());
}

#[test]
fn integer_c_pole_term() {
    let s = ComplexValue::from_f64(2.0, 0.0, 160);
    let (a, c) = (Param::ratio(1, 3), Param::int(1));
    let r = phi_integral(&TestFunction::hermite(0), &s, &a, &c, &ctx()).unwrap();
    let pole = r.pole.clone().expect("pole carried symbolically");
    assert!(pole.location.is_zero());
    // residue -e^{-πiac} f(0) = -e^{-πi/3}
    let want = -&turn(&Param::ratio(-1, 6), 128);
    assert!((&pole.residue - &want).abs_f64() < 1e-27);
    let regular = gaussian_phi_closed_form(&s, &a, &c);
    assert!((&r.value.with_prec(192) - &regular).abs_f64() < 1e-26);
}

#[test]
fn hermite_zeta_integrals_are_completed_lerch_functions() {
    let s = ComplexValue::from_f64(0.3, 1.0, 160);
    let (a, c) = (Param::ratio(1, 3), Param::ratio(2, 5));
    let ctx = ctx();
    let phase = turn(&a.mul(&c).mul(&Param::ratio(-1, 2)), 160);
    let p = LerchPoint::new(s.clone(), a.clone(), c.clone());

    let f0 = f_k(&TestFunction::hermite(0), 0, &s, &a, &c, &ctx).unwrap();
    let lp = lhat_star(Sign::Plus, &p, &ctx).unwrap();
    assert!((&(&f0.value * &phase) - &lp.value).abs_f64() < 1e-26);

    let f1 = f_k(&TestFunction::hermite(1), 1, &s, &a, &c, &ctx).unwrap();
    let lm = lhat_star(Sign::Minus, &p, &ctx).unwrap();
    let kappa = Float::with_val(160, Float::with_val(160, Constant::Pi) * 2u32).sqrt() * 2u32;
    assert!((&(&f1.value * &phase) - &lm.value.scale(&kappa)).abs_f64() < 1e-26);
}

#[test]
fn mismatched_parity_vanishes() {
    let s = ComplexValue::from_f64(0.6, -1.5, 160);
    let (a, c) = (Param::ratio(2, 7), Param::ratio(1, 9));
    let r = f_k(&TestFunction::hermite(0), 1, &s, &a, &c, &ctx()).unwrap();
    assert!(r.value.abs_f64() < 1e-26);
    let r = f_k(&TestFunction::hermite(1), 0, &s, &a, &c, &ctx()).unwrap();
    assert!(r.value.abs_f64() < 1e-26);
    let r = phi_k(&TestFunction::hermite(3), 0, &s, &a, &c, &ctx()).unwrap();
    assert!(r.value.abs_f64() < 1e-26);
}

#[test]
fn residue_at_one_for_integer_a() {
    let ctx = ctx();
    let s = ComplexValue::from_f64(2.0, 0.0, 160);
    for (a, c) in [(Param::int(0), Param::ratio(1, 3)), (Param::int(2), Param::ratio(1, 3))] {
        let f = TestFunction::modulated_gaussian(0.25);
        let r = f_k(&f, 0, &s, &a, &c, &ctx).unwrap();
        let pole = r.pole.clone().expect("pole at 1");
        assert!((&pole.location - &ComplexValue::one(64)).abs_f64() == 0.0);
        // 2 e^{πiac} Ff(0)
        let ff0 = f.fourier_eval(&Float::with_val(160, 0), 160);
        let want = (&turn(&a.mul(&c).mul(&Param::ratio(1, 2)), 160) * &ff0).scale_f64(2.0);
        assert!((&pole.residue - &want).abs_f64() < 1e-26, "{} vs {}", pole.residue, want);
    }
}

#[test]
fn residue_at_zero_for_integer_c() {
    let ctx = ctx();
    let s = ComplexValue::from_f64(1e-3, 0.0, 160);
    let f = TestFunction::hermite(2);
    let (a, c) = (Param::ratio(1, 4), Param::int(3));
    let r = f_k(&f, 0, &s, &a, &c, &ctx).unwrap();
    let pole = r.pole.clone().expect("pole at 0");
    assert!(pole.location.is_zero());
    let f0 = f.eval(&Float::with_val(160, 0), 160);
    let want = (&turn(&a.mul(&c).mul(&Param::ratio(-1, 2)), 160) * &f0).scale_f64(-2.0);
    assert!((&pole.residue - &want).abs_f64() < 1e-26);
}

#[test]
fn odd_index_is_entire() {
    let ctx = ctx();
    let f = TestFunction::hermite(1);
    for sv in [1e-6, 1.0 - 1e-6, 0.0, 1.0] {
        let s = ComplexValue::from_f64(sv, 0.0, 160);
        let r = f_k(&f, 1, &s, &Param::int(0), &Param::int(1), &ctx).unwrap();
        assert!(r.pole.is_none());
        assert!(r.value.abs_f64() < 100.0);
    }
}

#[test]
fn functional_equation_general() {
    let ctx = ctx();
    let cases = [
        (TestFunction::hermite(0), 0, ComplexValue::from_f64(0.25, 3.0, 160), Param::ratio(3, 8), Param::ratio(5, 7)),
        (TestFunction::hermite(1), 1, ComplexValue::from_f64(1.5, -2.0, 160), Param::ratio(17, 10), Param::ratio(-3, 10)),
        (TestFunction::hermite(0), 0, ComplexValue::from_f64(0.5, 6.0, 160), Param::ratio(1, 6), Param::ratio(1, 2)),
        (TestFunction::modulated_gaussian(0.25), 0, ComplexValue::from_f64(-0.4, 1.0, 160), Param::ratio(2, 3), Param::ratio(1, 4)),
        (TestFunction::modulated_gaussian(0.25), 1, ComplexValue::from_f64(2.2, 0.5, 160), Param::ratio(-5, 3), Param::ratio(7, 4)),
        (TestFunction::dilated_gaussian(2.0), 0, ComplexValue::from_f64(0.3, 0.0, 160), Param::int(1), Param::ratio(1, 3)),
    ];
    for (f, k, s, a, c) in cases {
        let r = fe_residual_general(&f, k, &s, &a, &c, &ctx).unwrap();
        assert!(r.residual < 1e-25 && r.residual <= r.err_bound + 1e-25, "{} k={k}: {r:?}", f.name());
    }
}

#[test]
fn twisted_periodicity() {
    let ctx = ctx();
    let f = TestFunction::modulated_gaussian(0.25);
    let s = ComplexValue::from_f64(0.4, 1.0, 160);
    for k in [0, 1] {
        let (ra, rc) = periodicity_residuals(&f, k, &s, &Param::ratio(1, 3), &Param::ratio(3, 5), &ctx).unwrap();
        assert!(ra.residual < 1e-25 && rc.residual < 1e-25, "k={k}: {ra:?} {rc:?}");
    }
    let (ra, rc) = periodicity_residuals(&TestFunction::hermite(0), 0, &s, &Param::int(0), &Param::int(0), &ctx).unwrap();
    assert!(ra.residual < 1e-25 && rc.residual < 1e-25, "{ra:?} {rc:?}");
}

#[test]
fn quadrature_level_doubling() {
    let ctx = ctx();
    let f = TestFunction::hermite(2);
    let s = ComplexValue::from_f64(0.8, 4.0, 160);
    let (a, c) = (Param::ratio(1, 5), Param::ratio(4, 9));
    let coarse = phi_integral_with(&f, &s, &a, &c, &ctx, QuadratureSpec { level: 5, min_level: 5 }).unwrap();
    let fine = phi_integral_with(&f, &s, &a, &c, &ctx, QuadratureSpec { level: 10, min_level: 10 }).unwrap();
    let d = (&coarse.value - &fine.value).abs_f64();
    assert!(d <= coarse.err_bound, "{d:e} vs {:e}", coarse.err_bound);
}

#[test]
fn registration_checks() {
    let ctx = ctx();
    for f in Registry::builtin().iter() {
        f.validate(&ctx).unwrap_or_else(|e| panic!("{}: {e}", f.name()));
    }
    let g = TestFunction::hermite(0);
    let eval: RealFn = {
        let g = g.clone();
        Arc::new(move |x: &Float, p: u32| g.eval(x, p))
    };
    let bad_decay = TestFunction::register("tight", eval.clone(), eval.clone(), DecayEnvelope { constant: 1.0, rate: 0.1 }, Parity::Even, &ctx);
    assert!(matches!(bad_decay, Err(Error::Registration(_))));
    let bad_parity = TestFunction::register("odd?", eval.clone(), eval.clone(), DecayEnvelope { constant: 1.0, rate: 1.0 }, Parity::Odd, &ctx);
    assert!(matches!(bad_parity, Err(Error::Registration(_))));
    assert!(TestFunction::register("ok", eval.clone(), eval, DecayEnvelope { constant: 1.0, rate: 1.0 }, Parity::Even, &ctx).is_ok());
}

#[test]
fn dependence_through_mellin_transform_only() {
    // f and its even part share M_0, so F_0 agrees
    let ctx = ctx();
    let f = TestFunction::modulated_gaussian(0.25);
    let s = ComplexValue::from_f64(0.3, 2.0, 160);
    let (a, c) = (Param::ratio(1, 7), Param::ratio(2, 3));
    let full = f_k(&f, 0, &s, &a, &c, &ctx).unwrap();
    let even = f_k(&f.parity_part(1), 0, &s, &a, &c, &ctx).unwrap();
    assert!((&full.value - &even.value).abs_f64() < 1e-25);
}
