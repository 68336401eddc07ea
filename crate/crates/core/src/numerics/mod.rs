//! Bases, significands, fractional parts and complex values.

mod complex;

pub use complex::ComplexValue;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A logarithm base `b > 1`, together with `Λ_b = 1 / ln b`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Base(f64);

impl Base {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::NonFinite(b));
        }
        if b <= 1.0 {
            return Err(Error::InvalidBase(b));
        }
        Ok(Self(b))
    }

    pub const TEN: Base = Base(10.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn ln(self) -> f64 {
        self.0.ln()
    }

    /// `Λ_b = 1 / ln b`.
    pub fn lambda(self) -> f64 {
        1.0 / self.0.ln()
    }

    /// The base as a digit radix, if it is an integer `>= 2`.
    pub fn radix(self) -> Option<u32> {
        let b = self.0;
        if b.fract() == 0.0 && b >= 2.0 && b <= u32::MAX as f64 {
            Some(b as u32)
        } else {
            None
        }
    }
}

impl TryFrom<f64> for Base {
    type Error = Error;
    fn try_from(b: f64) -> Result<Self> {
        Base::new(b)
    }
}

impl From<Base> for f64 {
    fn from(b: Base) -> f64 {
        b.0
    }
}

/// `x = significand × b^exponent` with `1 <= significand < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignificandDecomposition {
    pub significand: f64,
    pub exponent: i64,
}

/// Fractional part `y - ⌊y⌋`, always in `[0, 1)`.
pub fn frac(y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::NonFinite(y));
    }
    Ok(frac_unchecked(y))
}

/// [`frac`] without the finiteness check; NaN in, NaN out.
#[inline]
pub fn frac_unchecked(y: f64) -> f64 {
    let f = y - y.floor();
    // y slightly below an integer can round up to exactly 1
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `log_b x = Λ_b ln x`.
pub fn log_base(x: f64, b: Base) -> Result<f64> {
    check_positive(x)?;
    Ok(x.ln() * b.lambda())
}

/// Decomposes `x > 0` into significand and integer exponent.
///
/// Works in the log domain, so tiny and huge magnitudes are fine. The
/// exponent is corrected against the exact power when `log_b x` lands a
/// rounding error below an integer.
pub fn significand(x: f64, b: Base) -> Result<SignificandDecomposition> {
    check_positive(x)?;
    let l = x.ln() * b.lambda();
    let mut exponent = l.floor();
    let next = b.0.powf(exponent + 1.0);
    if next.is_normal() && next <= x {
        exponent += 1.0;
    }
    let here = b.0.powf(exponent);
    let mut s = if here.is_normal() {
        x / here
    } else {
        b.0.powf(l - exponent)
    };
    if s >= b.0 {
        // rounding in the division; stay inside the codomain
        s = b.0 * (1.0 - f64::EPSILON);
    } else if s < 1.0 {
        s = 1.0;
    }
    Ok(SignificandDecomposition { significand: s, exponent: exponent as i64 })
}

/// Leading digit of `x` in an integer base `b >= 2`.
pub fn first_digit(x: f64, b: Base) -> Result<u32> {
    let radix = b.radix().ok_or(Error::NonIntegerBase(b.0))?;
    let s = significand(x, b)?.significand;
    Ok((s.floor() as u32).clamp(1, radix - 1))
}

/// `true` when `x` is within a relative `1e-12` of an integer.
///
/// Used wherever a product like `ρ·n` must be recognised as an exact
/// integer despite rounding in `ρ = ln b / ln c`.
pub fn is_near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-12 * x.abs().max(1.0)
}

fn check_positive(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    if x <= 0.0 {
        return Err(Error::NonPositive(x));
    }
    Ok(())
}
