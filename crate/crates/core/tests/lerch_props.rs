use lerch_zeta::boundary::extrapolate_to_zero;
use lerch_zeta::lerch::{
    dirichlet_zeta_star, hurwitz, l_star, lhat_fe_residual, turn, zeta_star, LerchPoint, Param,
};
use lerch_zeta::numerics::{ComplexValue, PrecisionContext, Sign};
use proptest::prelude::*;

const PREC: u32 = 192;

fn ctx() -> PrecisionContext {
    PrecisionContext::with_bits(128).unwrap()
}

fn cv(re: f64, im: f64) -> ComplexValue {
    ComplexValue::from_f64(re, im, PREC)
}

/// A non-integer rational num/den.
fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Param> {
    (2i64..40).prop_flat_map(move |den| ((lo * den + 1)..(hi * den)).prop_filter_map("integer", move |num| (num % den != 0).then(|| Param::ratio(num, den))))
}

fn unit_rational() -> impl Strategy<Value = Param> {
    rational(0, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weil_functional_equations(a in unit_rational(), c in unit_rational(), re in -5.0f64..5.0, im in -20.0f64..20.0) {
        let p = LerchPoint::new(cv(re, im), a, c);
        for sign in [Sign::Plus, Sign::Minus] {
            let r = lhat_fe_residual(sign, &p, &ctx()).unwrap();
            prop_assert!(r.residual < 2f64.powi(-64), "{sign:?}: {:e}", r.residual);
        }
    }

    #[test]
    fn twisted_periodicity(a in rational(-3, 4), c in rational(-3, 4), re in -3.0f64..4.0, im in -10.0f64..10.0) {
        let c_ = ctx();
        let s = cv(re, im);
        let base = zeta_star(&LerchPoint::new(s.clone(), a.clone(), c.clone()), &c_).unwrap();
        let shifted_a = zeta_star(&LerchPoint::new(s.clone(), a.add_int(1), c.clone()), &c_).unwrap();
        let shifted_c = zeta_star(&LerchPoint::new(s, a.clone(), c.add_int(1)), &c_).unwrap();
        let tol = 4.0 * c_.target_abs_error() * base.value.abs_f64().max(1.0);
        prop_assert!((&shifted_a.value - &base.value).abs_f64() < tol);
        let phase = turn(&a.neg(), PREC);
        prop_assert!((&shifted_c.value - &(&base.value * &phase)).abs_f64() < tol);
    }

    #[test]
    fn dirichlet_oracle(a in rational(-2, 3), c in rational(-2, 3), re in 1.2f64..6.0, im in -10.0f64..10.0) {
        let p = LerchPoint::new(cv(re, im), a, c);
        let d = dirichlet_zeta_star(&p, &ctx()).unwrap();
        let z = zeta_star(&p, &ctx()).unwrap();
        prop_assert!((&d.value - &z.value).abs_f64() <= d.err_bound + z.err_bound);
    }

    #[test]
    fn corner_values_are_riemann_zeta(re in 1.1f64..8.0, im in -15.0f64..15.0) {
        let s = cv(re, im);
        let z01 = zeta_star(&LerchPoint::new(s.clone(), Param::int(0), Param::int(1)), &ctx()).unwrap();
        let z11 = zeta_star(&LerchPoint::new(s.clone(), Param::int(1), Param::int(1)), &ctx()).unwrap();
        let h = hurwitz(&s, &Param::int(1), &ctx()).unwrap();
        prop_assert!((&z01.value - &h.value).abs_f64() < 1e-30);
        prop_assert!((&z11.value - &h.value).abs_f64() < 1e-30);
    }
}

#[test]
fn trivial_zeros() {
    let c_ = ctx();
    for (a, c) in [(Param::ratio(1, 3), Param::ratio(2, 5)), (Param::ratio(7, 9), Param::ratio(1, 8)), (Param::ratio(1, 2), Param::ratio(5, 6))] {
        for k in [0, 2, 4] {
            let v = l_star(Sign::Plus, &LerchPoint::new(cv(-(k as f64), 0.0), a.clone(), c.clone()), &c_).unwrap();
            assert!(v.value.abs_f64() < 2f64.powi(-60), "L+ at -{k}: {}", v.value);
        }
        for k in [1, 3, 5] {
            let v = l_star(Sign::Minus, &LerchPoint::new(cv(-(k as f64), 0.0), a.clone(), c.clone()), &c_).unwrap();
            assert!(v.value.abs_f64() < 2f64.powi(-60), "L- at -{k}: {}", v.value);
        }
    }
}

#[test]
fn finite_part_at_one_is_the_limit() {
    // ζ(s, 1) - 1/(s - 1) → Euler's constant
    let c_ = ctx();
    let at = zeta_star(&LerchPoint::new(cv(1.0, 0.0), Param::int(0), Param::int(1)), &c_).unwrap();
    let pole = at.pole.clone().expect("pole at s = 1");
    assert!(pole.residue.add_f64(-1.0).abs_f64() < 1e-30);
    let eps: Vec<f64> = (4..12).map(|k| 2f64.powi(-k)).collect();
    let vals: Vec<ComplexValue> = eps
        .iter()
        .map(|&e| {
            let v = zeta_star(&LerchPoint::new(cv(1.0 + e, 0.0), Param::int(0), Param::int(1)), &c_).unwrap();
            v.value.add_f64(-1.0 / e)
        })
        .collect();
    let limit = extrapolate_to_zero(&eps, &vals);
    assert!((&limit - &at.value).abs_f64() < 1e-20, "{} vs {}", limit, at.value);
    assert!((at.value.re.to_f64() - 0.5772156649015329).abs() < 1e-15);
}
