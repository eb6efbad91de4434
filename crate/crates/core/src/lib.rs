//! Arbitrary-precision evaluation of the Lerch zeta function ζ(s, a, c), its
//! completed symmetrizations L̂±, the twisted-periodic extension ζ* to all real
//! (a, c), renormalized boundary-continuous variants and the Hermite family L̂_n.

pub mod boundary;
pub mod error;
pub mod hermite;
pub mod lerch;
pub mod numerics;
pub mod zeta_integral;

pub use error::{Error, Result};
pub use numerics::{ComplexValue, EvalResult, Pole, PrecisionContext, Sign};
