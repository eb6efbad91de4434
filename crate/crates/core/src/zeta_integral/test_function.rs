use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::hermite::HermiteGaussian;
use crate::numerics::{ComplexValue, PrecisionContext};

/// A function R → C evaluated at a requested precision.
pub type RealFn = Arc<dyn Fn(&Float, u32) -> ComplexValue + Send + Sync>;

/// Declared bound |f(x)|, |Ff(x)| ≤ constant · e^{-x²/rate}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayEnvelope {
    pub constant: f64,
    pub rate: f64,
}

impl DecayEnvelope {
    pub fn at(&self, x: f64) -> f64 {
        self.constant * (-x * x / self.rate).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// ε with f(-x) = ε f(x), if any.
    pub fn epsilon(self) -> Option<i32> {
        match self {
            Parity::Even => Some(1),
            Parity::Odd => Some(-1),
            Parity::Mixed => None,
        }
    }
}

/// A rapidly decaying test function together with its Fourier transform
/// F f(y) = ∫ e^{-2πixy} f(x) dx.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    eval: RealFn,
    fourier: RealFn,
    decay: DecayEnvelope,
    parity: Parity,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("parity", &self.parity)
            .finish()
    }
}

fn reflect(g: &RealFn) -> RealFn {
    let g = g.clone();
    Arc::new(move |x: &Float, prec: u32| g(&Float::with_val(prec, -x), prec))
}

impl TestFunction {
    /// Builds a test function after spot-checking the declared envelope and parity
    /// on a log-spaced grid out to 3√(rate · working_bits · ln 2).
    pub fn register(
        name: impl Into<String>,
        eval: RealFn,
        fourier: RealFn,
        decay: DecayEnvelope,
        parity: Parity,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let f = TestFunction { name: name.into(), eval, fourier, decay, parity };
        f.validate(ctx)?;
        Ok(f)
    }

    /// Re-runs the registration checks.
    pub fn validate(&self, ctx: &PrecisionContext) -> Result<()> {
        let name = &self.name;
        if !(self.decay.constant > 0.0 && self.decay.rate > 0.0) {
            return Err(Error::Registration(format!("{name}: envelope constants must be positive")));
        }
        let prec = ctx.internal_bits();
        let x_max = 3.0 * (self.decay.rate * ctx.working_bits() as f64 * std::f64::consts::LN_2).sqrt();
        let mut grid = vec![0.0];
        let lo: f64 = 1e-3;
        let steps = 64;
        for i in 0..=steps {
            grid.push(lo * (x_max / lo).powf(i as f64 / steps as f64));
        }
        let slack = Float::with_val(64, 1.0 + 1e-9);
        for &x in &grid {
            // the envelope may underflow f64 far out, so compare in MPFR
            let env = Float::with_val(64, -x * x / self.decay.rate).exp() * self.decay.constant * &slack;
            for sx in [x, -x] {
                let xf = Float::with_val(prec, sx);
                for (which, g) in [("f", &self.eval), ("Ff", &self.fourier)] {
                    let v = g(&xf, prec).abs();
                    if v > env {
                        return Err(Error::Registration(format!(
                            "{name}: |{which}({sx})| = {} exceeds the declared envelope",
                            v.to_f64()
                        )));
                    }
                }
            }
            if let Some(eps) = self.parity.epsilon() {
                let xf = Float::with_val(prec, x);
                let p = (self.eval)(&xf, prec);
                let m = (self.eval)(&Float::with_val(prec, -&xf), prec);
                let diff = (&m - &p.scale_f64(eps as f64)).abs_f64();
                if diff > 1e-12 * p.abs_f64() + ctx.target_abs_error() {
                    return Err(Error::Registration(format!("{name}: parity tag violated at x = {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> DecayEnvelope {
        self.decay
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eval(&self, x: &Float, prec: u32) -> ComplexValue {
        (self.eval)(x, prec)
    }

    pub fn fourier_eval(&self, x: &Float, prec: u32) -> ComplexValue {
        (self.fourier)(x, prec)
    }

    /// F f as a test function; its transform is x ↦ f(-x).
    pub fn fourier_dual(&self) -> TestFunction {
        TestFunction {
            name: format!("F[{}]", self.name),
            eval: self.fourier.clone(),
            fourier: reflect(&self.eval),
            decay: self.decay,
            parity: self.parity,
        }
    }

    /// f_ε(x) = (f(x) + ε f(-x)) / 2.
    pub fn parity_part(&self, eps: i32) -> TestFunction {
        let e = if eps >= 0 { 1.0 } else { -1.0 };
        let combine = |g: &RealFn| -> RealFn {
            let g = g.clone();
            Arc::new(move |x: &Float, prec: u32| {
                let p = g(x, prec);
                let m = g(&Float::with_val(prec, -x), prec);
                (&p + &m.scale_f64(e)).scale_f64(0.5)
            })
        };
        TestFunction {
            name: format!("{}[{}]", self.name, if e > 0.0 { "even" } else { "odd" }),
            eval: combine(&self.eval),
            fourier: combine(&self.fourier),
            decay: self.decay,
            parity: if e > 0.0 { Parity::Even } else { Parity::Odd },
        }
    }

    /// φ_n(x) = H_n(√(2π)x) e^{-πx²}, with F φ_n = (-i)^n φ_n.
    pub fn hermite(n: u32) -> TestFunction {
        let h = HermiteGaussian::new(n);
        let eval: RealFn = Arc::new(move |x: &Float, prec: u32| ComplexValue::from_real(&h.eval(x, prec)));
        let fourier: RealFn = Arc::new(move |x: &Float, prec: u32| {
            let v = ComplexValue::from_real(&h.eval(x, prec));
            match n % 4 {
                0 => v,
                1 => -&v.mul_i(),
                2 => -&v,
                _ => v.mul_i(),
            }
        });
        TestFunction {
            name: format!("hermite{n}"),
            eval,
            fourier,
            decay: DecayEnvelope { constant: h.envelope_constant(), rate: 2.0 / std::f64::consts::PI },
            parity: if n % 2 == 0 { Parity::Even } else { Parity::Odd },
        }
    }

    /// e^{-πλx²}, with transform λ^{-1/2} e^{-πx²/λ}.
    pub fn dilated_gaussian(lambda: f64) -> TestFunction {
        let eval: RealFn = Arc::new(move |x: &Float, prec: u32| {
            let pi = Float::with_val(prec, Constant::Pi);
            let e = Float::with_val(prec, -(pi * Float::with_val(prec, x.square_ref()))) * lambda;
            ComplexValue::from_real(&e.exp())
        });
        let fourier: RealFn = Arc::new(move |x: &Float, prec: u32| {
            let pi = Float::with_val(prec, Constant::Pi);
            let e = Float::with_val(prec, -(pi * Float::with_val(prec, x.square_ref()))) / lambda;
            let scale = Float::with_val(prec, lambda).sqrt().recip();
            ComplexValue::from_real(&(e.exp() * scale))
        });
        let rate = (1.0 / (std::f64::consts::PI * lambda)).max(lambda / std::f64::consts::PI);
        TestFunction {
            name: format!("gaussian{lambda}"),
            eval,
            fourier,
            decay: DecayEnvelope { constant: lambda.powf(-0.5).max(1.0) * (1.0 + 1e-12), rate },
            parity: Parity::Even,
        }
    }

    /// e^{-πx²} e^{2πibx}, of mixed parity, with transform e^{-π(x-b)²}.
    pub fn modulated_gaussian(b: f64) -> TestFunction {
        let eval: RealFn = Arc::new(move |x: &Float, prec: u32| {
            let pi = Float::with_val(prec, Constant::Pi);
            let g = Float::with_val(prec, -(Float::with_val(prec, &pi * Float::with_val(prec, x.square_ref())))).exp();
            let theta = Float::with_val(prec, &pi * 2u32) * x * b;
            ComplexValue::expi(&theta).scale(&g)
        });
        let fourier: RealFn = Arc::new(move |x: &Float, prec: u32| {
            let pi = Float::with_val(prec, Constant::Pi);
            let d = Float::with_val(prec, x - b);
            let g = Float::with_val(prec, -(pi * Float::with_val(prec, d.square_ref()))).exp();
            ComplexValue::from_real(&g)
        });
        TestFunction {
            name: format!("modulated{b}"),
            eval,
            fourier,
            decay: DecayEnvelope { constant: (std::f64::consts::PI * b * b).exp() * (1.0 + 1e-12), rate: 2.0 / std::f64::consts::PI },
            parity: Parity::Mixed,
        }
    }
}

/// Named test functions, fixed once built.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    map: BTreeMap<String, TestFunction>,
}

impl Registry {
    /// The Hermite functions φ_0..φ_12 and two non-Hermite Gaussians.
    pub fn builtin() -> Registry {
        let mut map = BTreeMap::new();
        for n in 0..=12 {
            let f = TestFunction::hermite(n);
            map.insert(f.name.clone(), f);
        }
        for f in [TestFunction::dilated_gaussian(2.0), TestFunction::modulated_gaussian(0.25)] {
            map.insert(f.name.clone(), f);
        }
        Registry { map }
    }

    /// Adds checked functions to a copy of `self`.
    pub fn with(mut self, extra: impl IntoIterator<Item = TestFunction>) -> Registry {
        for f in extra {
            self.map.insert(f.name.clone(), f);
        }
        self
    }

    pub fn get(&self, name: &str) -> Option<&TestFunction> {
        self.map.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TestFunction> {
        self.map.values()
    }
}
