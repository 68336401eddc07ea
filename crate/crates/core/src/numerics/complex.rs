use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

/// A complex number `re + i·im`.
///
/// Serialized as a two-element array `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };
    pub const ONE: Self = Self { re: 1.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    /// `e^{iθ}`.
    pub fn cis(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { re: c, im: s }
    }

    /// `r·e^{iθ}`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::cis(theta).scale(r)
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    pub fn scale(self, k: f64) -> Self {
        Self { re: self.re * k, im: self.im * k }
    }

    pub fn exp(self) -> Self {
        Self::from_polar(self.re.exp(), self.im)
    }

    /// Principal-branch logarithm.
    pub fn ln(self) -> Self {
        Self { re: self.modulus().ln(), im: self.arg() }
    }

    /// Principal-branch power `self^p` for real `p`.
    pub fn powf(self, p: f64) -> Self {
        if self == Self::ZERO {
            return if p == 0.0 { Self::ONE } else { Self::ZERO };
        }
        let l = self.ln();
        Self::from_polar((l.re * p).exp(), l.im * p)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl From<[f64; 2]> for ComplexValue {
    fn from([re, im]: [f64; 2]) -> Self {
        Self { re, im }
    }
}

impl From<ComplexValue> for [f64; 2] {
    fn from(z: ComplexValue) -> Self {
        [z.re, z.im]
    }
}

impl From<f64> for ComplexValue {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

impl Add for ComplexValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ComplexValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Mul<f64> for ComplexValue {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Div for ComplexValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Smith's algorithm
        if rhs.re.abs() >= rhs.im.abs() {
            let r = rhs.im / rhs.re;
            let d = rhs.re + rhs.im * r;
            Self { re: (self.re + self.im * r) / d, im: (self.im - self.re * r) / d }
        } else {
            let r = rhs.re / rhs.im;
            let d = rhs.re * r + rhs.im;
            Self { re: (self.re * r + self.im) / d, im: (self.im * r - self.re) / d }
        }
    }
}

impl Neg for ComplexValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
