//! Parsing of command-line numbers: complex s, real parameters and ranges.

use lerch_zeta::lerch::Param;
use lerch_zeta::numerics::ComplexValue;
use rug::{Float, Rational};

use crate::error::CliError;

fn real(text: &str, prec: u32) -> Result<Float, CliError> {
    let t = text.trim();
    let parsed = Float::parse(t).map_err(|_| CliError::Parse(format!("not a real number: '{text}'")))?;
    Ok(Float::with_val(prec, parsed))
}

/// Accepts `re`, `re+imi`, `re-imi`, `imi` and `i`-suffixed forms such as `0.5+2i`.
pub fn complex(text: &str, prec: u32) -> Result<ComplexValue, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ComplexValue::from_floats(real(&t, prec)?, Float::new(prec)));
    };
    // split at the last sign that is not a leading sign or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(ComplexValue::from_floats(real(re, prec)?, real(im, prec)?))
}

/// `p/q` and plain integers are exact rationals (integers select the integer
/// cases); anything with a decimal point or exponent is a real.
pub fn param(text: &str, prec: u32) -> Result<Param, CliError> {
    Param::parse(text, prec).map_err(|_| CliError::Parse(format!("not a parameter: '{text}' (use p/q, an integer or a decimal)")))
}

/// `count` equally spaced points from `lo:hi`, exact when both ends are rational.
pub fn range(text: &str, count: usize, prec: u32) -> Result<Vec<Param>, CliError> {
    if count < 2 {
        return Err(CliError::Parse("grid counts must be at least 2".into()));
    }
    let (lo, hi) = text.split_once(':').ok_or_else(|| CliError::Parse(format!("range '{text}' is not of the form lo:hi")))?;
    let (lo, hi) = (param(lo, prec)?, param(hi, prec)?);
    let steps = (count - 1) as i64;
    Ok(match (&lo, &hi) {
        (Param::Rational(l), Param::Rational(h)) => (0..count as i64)
            .map(|j| {
                let t = Rational::from((j, steps));
                Param::Rational(Rational::from(l + Rational::from(Rational::from(h - l) * t)))
            })
            .collect(),
        _ => {
            let (l, h) = (lo.to_float(prec), hi.to_float(prec));
            if !l.is_finite() || !h.is_finite() {
                return Err(CliError::Parse(format!("range '{text}' is not finite")));
            }
            (0..count)
                .map(|j| {
                    let w = Float::with_val(prec, &h - &l) * j as u32 / steps as u32;
                    Param::Real(Float::with_val(prec, &l + w))
                })
                .collect()
        }
    })
}
