//! Symbolic densities with closed-form Fourier transforms.
//!
//! The catalog follows the usual table of transform pairs under the
//! convention `f̂(ξ) = ∫ e^{-2πiξx} f(x) dx`; affine maps and independent
//! sums (convolutions) compose on top. Transforms are always evaluated in
//! closed form; only the density of a convolution needs quadrature.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::numerics::{Base, ComplexValue};
use crate::quad::Quadrature;
use crate::seeds::BuiltinSeed;
use crate::special::{
    cauchy_cdf, cauchy_sf, gamma_p, gamma_q, laplace_cdf, laplace_sf, ln_gamma, normal_cdf,
    normal_pdf, normal_sf, sinc_pi,
};
use crate::{Error, Result};

/// Absolute tolerance for the convolution integral behind a convolution density.
pub const CONVOLUTION_ABS_TOL: f64 = 1e-10;

/// A density node: a catalog family or a composite built from them.
///
/// JSON form: `{"family": "<name>", "params": {...}}`; composites nest their
/// children under `inner` / `left` / `right` inside `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum DistributionSpec {
    /// `N(m, s²)`.
    Normal { m: f64, s: f64 },
    /// Uniform on `[-a, a]`.
    UniformSym { a: f64 },
    /// Uniform on `[0, a]`.
    UniformZero { a: f64 },
    /// `(1/a)(1 - |x|/a)` on `|x| <= a`.
    Triangular { a: f64 },
    /// `(1 - cos 2πax) / (2aπ²x²)`, whose transform is `max(0, 1 - |ξ|/a)`.
    FejerDual { a: f64 },
    /// Shape `alpha`, scale `beta`.
    Gamma { alpha: f64, beta: f64 },
    /// Laplace with location `m` and scale `s`.
    BilateralExp { m: f64, s: f64 },
    /// Cauchy with location `m` and half-width `s`.
    Cauchy { m: f64, s: f64 },
    /// Unit rectangle on `[-½, ½]` (value ½ on the edges).
    Rect,
    /// `max(0, 1 - |x|)`.
    Tri,
    /// Density of `cX + d` where `X` has density `inner`.
    Affine { inner: Box<DistributionSpec>, c: f64, d: f64 },
    /// Density of an independent sum.
    Convolution { left: Box<DistributionSpec>, right: Box<DistributionSpec> },
    /// `g(y) = H(y) - H(y - 1)` for a built-in seed function `H`.
    SeedDerived { seed: BuiltinSeed },
}

/// A transform value as `exp(log_modulus) · e^{i·phase}`.
///
/// Products and shifts compose additively, and exact zeros (`log_modulus =
/// -∞`) stay distinguishable from underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub log_modulus: f64,
    pub phase: f64,
}

impl Polar {
    pub const ONE: Polar = Polar { log_modulus: 0.0, phase: 0.0 };

    /// A real value; negative numbers carry phase `π`.
    pub fn from_real(v: f64) -> Self {
        Polar {
            log_modulus: v.abs().ln(),
            phase: if v < 0.0 { PI } else { 0.0 },
        }
    }

    pub fn is_zero(self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    pub fn modulus(self) -> f64 {
        self.log_modulus.exp()
    }

    /// Sign of the real part, with exact zeros reported as `0`.
    pub fn real_sign(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let c = self.phase.cos();
        if c > 0.0 {
            1.0
        } else if c < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn to_complex(self) -> ComplexValue {
        if self.is_zero() {
            return ComplexValue::ZERO;
        }
        ComplexValue::from_polar(self.log_modulus.exp(), self.phase)
    }

    pub fn shift_phase(self, delta: f64) -> Polar {
        Polar { phase: self.phase + delta, ..self }
    }
}

impl core::ops::Mul for Polar {
    type Output = Polar;

    fn mul(self, other: Polar) -> Polar {
        Polar {
            log_modulus: self.log_modulus + other.log_modulus,
            phase: self.phase + other.phase,
        }
    }
}

/// How fast a density decays, as far as wrapping onto `[0, 1)` cares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    /// Support inside `[lo, hi]`.
    Compact { lo: f64, hi: f64 },
    /// Exponential or faster decay.
    Light,
    /// Polynomial decay with smooth, non-oscillating tails.
    Heavy,
    /// `a·sinc²(a(y - location))`: polynomial decay with an oscillating numerator.
    Fejer { a: f64, location: f64 },
}

/// Upper bound on `|ĝ(ξ)|` for `ξ >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// Identically zero for `|ξ| >= beyond`.
    Zero { beyond: f64 },
    /// `coef · exp(-rate ξ²)`.
    Gaussian { coef: f64, rate: f64 },
    /// `coef · exp(-rate ξ)`.
    Exponential { coef: f64, rate: f64 },
    /// `coef · ξ^{-power}`.
    Power { coef: f64, power: f64 },
    /// No usable bound.
    Unknown,
}

impl Envelope {
    fn rank(&self) -> u8 {
        match self {
            Envelope::Zero { .. } => 4,
            Envelope::Gaussian { .. } => 3,
            Envelope::Exponential { .. } => 2,
            Envelope::Power { .. } => 1,
            Envelope::Unknown => 0,
        }
    }

    /// Envelope of `ĝ(c ξ)`.
    fn scaled(self, c: f64) -> Envelope {
        match self {
            Envelope::Zero { beyond } => Envelope::Zero { beyond: beyond / c },
            Envelope::Gaussian { coef, rate } => Envelope::Gaussian { coef, rate: rate * c * c },
            Envelope::Exponential { coef, rate } => Envelope::Exponential { coef, rate: rate * c },
            Envelope::Power { coef, power } => Envelope::Power { coef: coef * c.powf(-power), power },
            Envelope::Unknown => Envelope::Unknown,
        }
    }

    /// Envelope of a product of transforms, each bounded by 1 in modulus.
    fn product(self, other: Envelope) -> Envelope {
        use Envelope::*;
        match (self, other) {
            (Zero { beyond: a }, Zero { beyond: b }) => Zero { beyond: a.min(b) },
            (Gaussian { coef: c1, rate: r1 }, Gaussian { coef: c2, rate: r2 }) => {
                Gaussian { coef: c1 * c2, rate: r1 + r2 }
            }
            (Exponential { coef: c1, rate: r1 }, Exponential { coef: c2, rate: r2 }) => {
                Exponential { coef: c1 * c2, rate: r1 + r2 }
            }
            (Power { coef: c1, power: p1 }, Power { coef: c2, power: p2 }) => {
                Power { coef: c1 * c2, power: p1 + p2 }
            }
            (a, b) => {
                if a.rank() >= b.rank() {
                    a
                } else {
                    b
                }
            }
        }
    }

    /// Upper bound on `Σ_{n > n_max} env(n)`; infinite when divergent.
    pub fn tail_sum(&self, n_max: usize) -> f64 {
        let n = n_max as f64;
        match *self {
            Envelope::Zero { beyond } => {
                let last = beyond.ceil() - 1.0;
                (last - n).max(0.0)
            }
            Envelope::Gaussian { coef, rate } => {
                let first = n + 1.0;
                coef * (-rate * first * first).exp() / (1.0 - (-rate * (2.0 * n + 3.0)).exp())
            }
            Envelope::Exponential { coef, rate } => {
                coef * (-rate * (n + 1.0)).exp() / (1.0 - (-rate).exp())
            }
            Envelope::Power { coef, power } => {
                if power > 1.0 && n >= 1.0 {
                    coef * n.powf(1.0 - power) / (power - 1.0)
                } else {
                    f64::INFINITY
                }
            }
            Envelope::Unknown => f64::INFINITY,
        }
    }
}

/// Highest derivative order tracked in a [`JumpExpansion`].
pub const MAX_JUMP_ORDER: u32 = 11;

/// A jump of size `weight` in the `order`-th derivative of a density at `at`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub at: f64,
    pub order: u32,
    pub weight: f64,
}

/// Transform written through the density's derivative jumps:
/// `ĝ(ξ) = Σ weight · e^{-2πiξ·at} / (2πiξ)^{order + 1}` for `ξ ≠ 0`.
///
/// Exact for piecewise polynomials. For the bilateral exponential it is the
/// truncated asymptotic series, accurate once `|ξ| >= valid_from`.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpExpansion {
    pub jumps: Vec<Jump>,
    pub exact: bool,
    pub valid_from: f64,
}

impl JumpExpansion {
    fn exact(jumps: Vec<Jump>) -> Self {
        Self { jumps, exact: true, valid_from: 0.0 }
    }

    fn affine(self, c: f64, d: f64) -> Self {
        let jumps = self
            .jumps
            .into_iter()
            .map(|j| Jump { at: c * j.at + d, order: j.order, weight: j.weight / c.powi(j.order as i32 + 1) })
            .collect();
        Self { jumps, exact: self.exact, valid_from: self.valid_from / c }
    }

    fn product(&self, other: &Self) -> Self {
        let mut exact = self.exact && other.exact;
        let mut jumps = Vec::with_capacity(self.jumps.len() * other.jumps.len());
        for a in &self.jumps {
            for b in &other.jumps {
                let order = a.order + b.order + 1;
                if order > MAX_JUMP_ORDER {
                    exact = false;
                    continue;
                }
                jumps.push(Jump { at: a.at + b.at, order, weight: a.weight * b.weight });
            }
        }
        Self { jumps, exact, valid_from: self.valid_from.max(other.valid_from) }
    }

    /// Evaluates the expansion at `ξ ≠ 0`.
    pub fn eval(&self, xi: f64) -> ComplexValue {
        let w = 2.0 * PI * xi;
        self.jumps.iter().fold(ComplexValue::ZERO, |acc, j| {
            let k = j.order as i32 + 1;
            // (iw)^{-k} = w^{-k} e^{-ikπ/2}
            let phase = -w * j.at - k as f64 * core::f64::consts::FRAC_PI_2;
            acc + ComplexValue::from_polar(j.weight * w.powi(-k), phase)
        })
    }
}

/// Common interface of anything that can be wrapped onto `[0, 1)`.
pub trait Density {
    fn pdf(&self, y: f64) -> f64;
    /// `P(Y > t)`: exact, or an upper bound when [`Density::exact_tails`] is false.
    fn upper_tail(&self, t: f64) -> f64;
    /// `P(Y < t)`: exact, or an upper bound when [`Density::exact_tails`] is false.
    fn lower_tail(&self, t: f64) -> f64;
    fn exact_tails(&self) -> bool;
    /// A point near the bulk of the mass.
    fn center(&self) -> f64;
    /// Smallest closed interval containing the support.
    fn support(&self) -> (f64, f64);
    /// Points where the density or its derivative is not smooth.
    fn breakpoints(&self) -> Vec<f64>;
    fn tail_class(&self) -> TailClass;
}

fn check_scale(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter { name, value, reason: "must be finite" });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParameter { name, value, reason: "must be positive" });
    }
    Ok(())
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite" })
    }
}

/// Symbolic affine map `cX + d`.
pub fn affine(dist: DistributionSpec, c: f64, d: f64) -> Result<DistributionSpec> {
    check_scale("c", c)?;
    check_finite("d", d)?;
    Ok(DistributionSpec::Affine { inner: Box::new(dist), c, d })
}

/// Symbolic independent sum.
pub fn convolve(left: DistributionSpec, right: DistributionSpec) -> DistributionSpec {
    DistributionSpec::Convolution { left: Box::new(left), right: Box::new(right) }
}

/// Point value of the density.
pub fn pdf_eval(dist: &DistributionSpec, y: f64) -> f64 {
    dist.pdf(y)
}

/// Closed-form Fourier transform `ĝ(ξ) = ∫ e^{-2πiξy} g(y) dy`.
pub fn ft_eval(dist: &DistributionSpec, xi: f64) -> ComplexValue {
    dist.transform(xi)
}

/// Characteristic function `E[e^{iζY}] = ĝ(-ζ / 2π)`.
pub fn char_fn(dist: &DistributionSpec, zeta: f64) -> ComplexValue {
    dist.transform(-zeta / (2.0 * PI))
}

impl DistributionSpec {
    pub fn normal(m: f64, s: f64) -> Result<Self> {
        check_finite("m", m)?;
        check_scale("s", s)?;
        Ok(Self::Normal { m, s })
    }

    pub fn uniform_sym(a: f64) -> Result<Self> {
        check_scale("a", a)?;
        Ok(Self::UniformSym { a })
    }

    pub fn uniform_zero(a: f64) -> Result<Self> {
        check_scale("a", a)?;
        Ok(Self::UniformZero { a })
    }

    pub fn triangular(a: f64) -> Result<Self> {
        check_scale("a", a)?;
        Ok(Self::Triangular { a })
    }

    pub fn fejer_dual(a: f64) -> Result<Self> {
        check_scale("a", a)?;
        Ok(Self::FejerDual { a })
    }

    pub fn gamma(alpha: f64, beta: f64) -> Result<Self> {
        check_scale("alpha", alpha)?;
        check_scale("beta", beta)?;
        Ok(Self::Gamma { alpha, beta })
    }

    pub fn bilateral_exp(m: f64, s: f64) -> Result<Self> {
        check_finite("m", m)?;
        check_scale("s", s)?;
        Ok(Self::BilateralExp { m, s })
    }

    pub fn cauchy(m: f64, s: f64) -> Result<Self> {
        check_finite("m", m)?;
        check_scale("s", s)?;
        Ok(Self::Cauchy { m, s })
    }

    /// Density of `log_b X` for `X ~ Lognormal(μ, σ²)`: `N(Λ_b μ, (Λ_b σ)²)`.
    pub fn log_of_lognormal(mu: f64, sigma: f64, base: Base) -> Result<Self> {
        check_finite("mu", mu)?;
        check_scale("sigma", sigma)?;
        Self::normal(base.lambda() * mu, base.lambda() * sigma)
    }

    /// Checks every parameter in the tree.
    pub fn validate(&self) -> Result<()> {
        use DistributionSpec::*;
        match self {
            Normal { m, s } | BilateralExp { m, s } | Cauchy { m, s } => {
                check_finite("m", *m)?;
                check_scale("s", *s)
            }
            UniformSym { a } | UniformZero { a } | Triangular { a } | FejerDual { a } => {
                check_scale("a", *a)
            }
            Gamma { alpha, beta } => {
                check_scale("alpha", *alpha)?;
                check_scale("beta", *beta)
            }
            Rect | Tri => Ok(()),
            Affine { inner, c, d } => {
                check_scale("c", *c)?;
                check_finite("d", *d)?;
                inner.validate()
            }
            Convolution { left, right } => {
                left.validate()?;
                right.validate()
            }
            SeedDerived { seed } => seed.validate(),
        }
    }

    /// `true` for densities symmetric about 0, whose transforms are real.
    pub fn is_even(&self) -> bool {
        use DistributionSpec::*;
        match self {
            Normal { m, .. } | BilateralExp { m, .. } | Cauchy { m, .. } => *m == 0.0,
            UniformSym { .. } | Triangular { .. } | FejerDual { .. } | Rect | Tri => true,
            UniformZero { .. } | Gamma { .. } | SeedDerived { .. } => false,
            Affine { inner, d, .. } => *d == 0.0 && inner.is_even(),
            Convolution { left, right } => left.is_even() && right.is_even(),
        }
    }

    /// Transform in polar form; see [`Polar`].
    pub fn transform_polar(&self, xi: f64) -> Polar {
        use DistributionSpec::*;
        let two_pi = 2.0 * PI;
        match self {
            Normal { m, s } => Polar {
                log_modulus: -2.0 * PI * PI * s * s * xi * xi,
                phase: -two_pi * m * xi,
            },
            UniformSym { a } => Polar::from_real(sinc_pi(2.0 * a * xi)),
            UniformZero { a } => Polar::from_real(sinc_pi(a * xi)).shift_phase(-PI * a * xi),
            Triangular { a } => {
                let s = sinc_pi(a * xi);
                Polar::from_real(s * s)
            }
            FejerDual { a } => Polar::from_real((1.0 - xi.abs() / a).max(0.0)),
            Gamma { alpha, beta } => {
                let t = two_pi * beta * xi;
                Polar { log_modulus: -0.5 * alpha * t.mul_add(t, 0.0).ln_1p(), phase: -alpha * t.atan() }
            }
            BilateralExp { m, s } => {
                let t = two_pi * s * xi;
                Polar { log_modulus: -(t * t).ln_1p(), phase: -two_pi * m * xi }
            }
            Cauchy { m, s } => Polar { log_modulus: -two_pi * s * xi.abs(), phase: -two_pi * m * xi },
            Rect => Polar::from_real(sinc_pi(xi)),
            Tri => {
                let s = sinc_pi(xi);
                Polar::from_real(s * s)
            }
            Affine { inner, c, d } => inner.transform_polar(c * xi).shift_phase(-two_pi * d * xi),
            Convolution { left, right } => left.transform_polar(xi) * right.transform_polar(xi),
            SeedDerived { seed } => seed.g_transform_polar(xi),
        }
    }

    /// Closed-form transform `ĝ(ξ)`.
    pub fn transform(&self, xi: f64) -> ComplexValue {
        self.transform_polar(xi).to_complex()
    }

    /// Density value; convolutions integrate numerically.
    pub fn pdf(&self, y: f64) -> f64 {
        use DistributionSpec::*;
        match self {
            Normal { m, s } => normal_pdf((y - m) / s) / s,
            UniformSym { a } => edge_aware_box(y, -a, *a, 0.5 / a),
            UniformZero { a } => edge_aware_box(y, 0.0, *a, 1.0 / a),
            Triangular { a } => (1.0 - y.abs() / a).max(0.0) / a,
            FejerDual { a } => {
                let s = sinc_pi(a * y);
                a * s * s
            }
            Gamma { alpha, beta } => gamma_pdf(y, *alpha, *beta),
            BilateralExp { m, s } => 0.5 * (-(y - m).abs() / s).exp() / s,
            Cauchy { m, s } => {
                let z = (y - m) / s;
                1.0 / (PI * s * z.mul_add(z, 1.0))
            }
            Rect => edge_aware_box(y, -0.5, 0.5, 1.0),
            Tri => (1.0 - y.abs()).max(0.0),
            Affine { inner, c, d } => inner.pdf((y - d) / c) / c,
            Convolution { left, right } => convolution_pdf(left, right, y),
            SeedDerived { seed } => crate::seeds::seed_pdf(seed, y),
        }
    }

    /// Envelope of `|ĝ(ξ)|` for `ξ >= 1`.
    pub fn envelope(&self) -> Envelope {
        use DistributionSpec::*;
        let pi2 = PI * PI;
        match self {
            Normal { s, .. } => Envelope::Gaussian { coef: 1.0, rate: 2.0 * pi2 * s * s },
            UniformSym { a } => Envelope::Power { coef: 1.0 / (2.0 * PI * a), power: 1.0 },
            UniformZero { a } => Envelope::Power { coef: 1.0 / (PI * a), power: 1.0 },
            Triangular { a } => Envelope::Power { coef: 1.0 / (pi2 * a * a), power: 2.0 },
            FejerDual { a } => Envelope::Zero { beyond: *a },
            Gamma { alpha, beta } => Envelope::Power { coef: (2.0 * PI * beta).powf(-alpha), power: *alpha },
            BilateralExp { s, .. } => Envelope::Power { coef: 1.0 / (4.0 * pi2 * s * s), power: 2.0 },
            Cauchy { s, .. } => Envelope::Exponential { coef: 1.0, rate: 2.0 * PI * s },
            Rect => Envelope::Power { coef: 1.0 / PI, power: 1.0 },
            Tri => Envelope::Power { coef: 1.0 / pi2, power: 2.0 },
            Affine { inner, c, .. } => inner.envelope().scaled(*c),
            Convolution { left, right } => left.envelope().product(right.envelope()),
            SeedDerived { seed } => seed.g_envelope(),
        }
    }

    /// Derivative-jump form of the transform, for piecewise polynomial
    /// densities (exact) and the bilateral exponential (asymptotic).
    pub fn jump_expansion(&self) -> Option<JumpExpansion> {
        use DistributionSpec::*;
        let step = |lo: f64, hi: f64, h: f64| {
            JumpExpansion::exact(vec![
                Jump { at: lo, order: 0, weight: h },
                Jump { at: hi, order: 0, weight: -h },
            ])
        };
        let kink = |a: f64| {
            let w = 1.0 / (a * a);
            JumpExpansion::exact(vec![
                Jump { at: -a, order: 1, weight: w },
                Jump { at: 0.0, order: 1, weight: -2.0 * w },
                Jump { at: a, order: 1, weight: w },
            ])
        };
        match self {
            UniformSym { a } => Some(step(-a, *a, 0.5 / a)),
            UniformZero { a } => Some(step(0.0, *a, 1.0 / a)),
            Rect => Some(step(-0.5, 0.5, 1.0)),
            Triangular { a } => Some(kink(*a)),
            Tri => Some(kink(1.0)),
            BilateralExp { m, s } => {
                // odd derivatives jump by -2·(½s^{-1})·s^{-(2k-1)} at the peak
                let jumps = (1..=4)
                    .map(|k| Jump { at: *m, order: 2 * k - 1, weight: -s.powi(-2 * k as i32) })
                    .collect();
                // the four-term series is accurate once (2πsξ)² >= 100
                Some(JumpExpansion { jumps, exact: false, valid_from: 10.0 / (2.0 * PI * s) })
            }
            Affine { inner, c, d } => Some(inner.jump_expansion()?.affine(*c, *d)),
            Convolution { left, right } => Some(left.jump_expansion()?.product(&right.jump_expansion()?)),
            _ => None,
        }
    }

    fn as_fejer(&self) -> Option<(f64, f64)> {
        match self {
            DistributionSpec::FejerDual { a } => Some((*a, 0.0)),
            DistributionSpec::Affine { inner, c, d } => {
                let (a, loc) = inner.as_fejer()?;
                Some((a / c, c * loc + d))
            }
            _ => None,
        }
    }
}

fn edge_aware_box(y: f64, lo: f64, hi: f64, height: f64) -> f64 {
    if y > lo && y < hi {
        height
    } else if y == lo || y == hi {
        0.5 * height
    } else {
        0.0
    }
}

fn gamma_pdf(y: f64, alpha: f64, beta: f64) -> f64 {
    if y < 0.0 {
        return 0.0;
    }
    if y == 0.0 {
        return if alpha < 1.0 {
            f64::INFINITY
        } else if alpha == 1.0 {
            1.0 / beta
        } else {
            0.0
        };
    }
    ((alpha - 1.0) * y.ln() - y / beta - ln_gamma(alpha) - alpha * beta.ln()).exp()
}

fn convolution_pdf(left: &DistributionSpec, right: &DistributionSpec, y: f64) -> f64 {
    let (l_lo, l_hi) = left.support();
    let (r_lo, r_hi) = right.support();
    let lo = l_lo.max(y - r_hi);
    let hi = l_hi.min(y - r_lo);
    if !(lo < hi) {
        return 0.0;
    }
    let mut breaks = left.breakpoints();
    breaks.extend(right.breakpoints().into_iter().map(|k| y - k));
    breaks.push(left.center());
    breaks.push(y - right.center());
    let q = Quadrature { abs_tol: CONVOLUTION_ABS_TOL, rel_tol: 1e-12, max_intervals: 4000 };
    q.integrate_with_breaks(|x| left.pdf(x) * right.pdf(y - x), lo, hi, &breaks)
        .value
        .max(0.0)
}

fn box_upper(t: f64, lo: f64, hi: f64) -> f64 {
    ((hi - t) / (hi - lo)).clamp(0.0, 1.0)
}

fn tri_upper(t: f64, a: f64) -> f64 {
    if t <= -a {
        1.0
    } else if t >= a {
        0.0
    } else if t >= 0.0 {
        let r = 1.0 - t / a;
        0.5 * r * r
    } else {
        let r = 1.0 + t / a;
        1.0 - 0.5 * r * r
    }
}

// P(Y > t) <= ∫_t^∞ dy / (aπ²y²) for a Fejér-type density centred at 0
fn fejer_upper_bound(t: f64, a: f64) -> f64 {
    if t <= 0.0 {
        1.0
    } else {
        (1.0 / (a * PI * PI * t)).min(1.0)
    }
}

impl Density for DistributionSpec {
    fn pdf(&self, y: f64) -> f64 {
        DistributionSpec::pdf(self, y)
    }

    fn upper_tail(&self, t: f64) -> f64 {
        use DistributionSpec::*;
        match self {
            Normal { m, s } => normal_sf((t - m) / s),
            UniformSym { a } => box_upper(t, -a, *a),
            UniformZero { a } => box_upper(t, 0.0, *a),
            Triangular { a } => tri_upper(t, *a),
            FejerDual { a } => fejer_upper_bound(t, *a),
            Gamma { alpha, beta } => gamma_q(*alpha, t.max(0.0) / beta),
            BilateralExp { m, s } => laplace_sf((t - m) / s),
            Cauchy { m, s } => cauchy_sf((t - m) / s),
            Rect => box_upper(t, -0.5, 0.5),
            Tri => tri_upper(t, 1.0),
            Affine { inner, c, d } => inner.upper_tail((t - d) / c),
            Convolution { left, right } => {
                let (cl, cr) = (left.center(), right.center());
                let excess = 0.5 * (t - cl - cr);
                (left.upper_tail(cl + excess) + right.upper_tail(cr + excess)).min(1.0)
            }
            SeedDerived { seed } => seed.g_upper_tail(t),
        }
    }

    fn lower_tail(&self, t: f64) -> f64 {
        use DistributionSpec::*;
        match self {
            Normal { m, s } => normal_cdf((t - m) / s),
            UniformSym { a } => box_upper(-t, -a, *a),
            UniformZero { a } => 1.0 - box_upper(t, 0.0, *a),
            Triangular { a } => tri_upper(-t, *a),
            FejerDual { a } => fejer_upper_bound(-t, *a),
            Gamma { alpha, beta } => gamma_p(*alpha, t.max(0.0) / beta),
            BilateralExp { m, s } => laplace_cdf((t - m) / s),
            Cauchy { m, s } => cauchy_cdf((t - m) / s),
            Rect => box_upper(-t, -0.5, 0.5),
            Tri => tri_upper(-t, 1.0),
            Affine { inner, c, d } => inner.lower_tail((t - d) / c),
            Convolution { left, right } => {
                let (cl, cr) = (left.center(), right.center());
                let excess = 0.5 * (t - cl - cr);
                (left.lower_tail(cl + excess) + right.lower_tail(cr + excess)).min(1.0)
            }
            SeedDerived { seed } => seed.g_lower_tail(t),
        }
    }

    fn exact_tails(&self) -> bool {
        use DistributionSpec::*;
        match self {
            FejerDual { .. } | Convolution { .. } => false,
            Affine { inner, .. } => inner.exact_tails(),
            _ => true,
        }
    }

    fn center(&self) -> f64 {
        use DistributionSpec::*;
        match self {
            Normal { m, .. } | BilateralExp { m, .. } | Cauchy { m, .. } => *m,
            UniformZero { a } => 0.5 * a,
            UniformSym { .. } | Triangular { .. } | FejerDual { .. } | Rect | Tri => 0.0,
            Gamma { alpha, beta } => alpha * beta,
            Affine { inner, c, d } => c * inner.center() + d,
            Convolution { left, right } => left.center() + right.center(),
            SeedDerived { seed } => seed.mu + 0.5,
        }
    }

    fn support(&self) -> (f64, f64) {
        use DistributionSpec::*;
        let inf = f64::INFINITY;
        match self {
            UniformSym { a } | Triangular { a } => (-a, *a),
            UniformZero { a } => (0.0, *a),
            Gamma { .. } => (0.0, inf),
            Rect => (-0.5, 0.5),
            Tri => (-1.0, 1.0),
            Affine { inner, c, d } => {
                let (lo, hi) = inner.support();
                (c * lo + d, c * hi + d)
            }
            Convolution { left, right } => {
                let (a, b) = left.support();
                let (c, d) = right.support();
                (a + c, b + d)
            }
            Normal { .. } | FejerDual { .. } | BilateralExp { .. } | Cauchy { .. } | SeedDerived { .. } => {
                (-inf, inf)
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        use DistributionSpec::*;
        match self {
            Normal { .. } | FejerDual { .. } | Cauchy { .. } => Vec::new(),
            UniformSym { a } => vec![-a, *a],
            UniformZero { a } => vec![0.0, *a],
            Triangular { a } => vec![-a, 0.0, *a],
            Gamma { .. } => vec![0.0],
            BilateralExp { m, .. } => vec![*m],
            Rect => vec![-0.5, 0.5],
            Tri => vec![-1.0, 0.0, 1.0],
            Affine { inner, c, d } => inner.breakpoints().into_iter().map(|k| c * k + d).collect(),
            Convolution { left, right } => {
                let l = left.breakpoints();
                let r = right.breakpoints();
                let mut out = Vec::with_capacity(l.len() * r.len());
                for a in &l {
                    for b in &r {
                        out.push(a + b);
                    }
                }
                out
            }
            SeedDerived { seed } => seed.g_breakpoints(),
        }
    }

    fn tail_class(&self) -> TailClass {
        use DistributionSpec::*;
        if let Some((a, location)) = self.as_fejer() {
            return TailClass::Fejer { a, location };
        }
        let (lo, hi) = Density::support(self);
        if lo.is_finite() && hi.is_finite() {
            return TailClass::Compact { lo, hi };
        }
        match self {
            Cauchy { .. } => TailClass::Heavy,
            Affine { inner, .. } => inner.tail_class(),
            Convolution { left, right } => match (left.tail_class(), right.tail_class()) {
                (TailClass::Heavy | TailClass::Fejer { .. }, _) | (_, TailClass::Heavy | TailClass::Fejer { .. }) => {
                    TailClass::Heavy
                }
                _ => TailClass::Light,
            },
            SeedDerived { seed } => seed.g_tail_class(),
            _ => TailClass::Light,
        }
    }
}

/// Density of `log_b X` for a positive random variable `X`.
///
/// Used for families whose log-density has no closed-form transform (for
/// example Gamma); its coefficients come from quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDensity {
    inner: DistributionSpec,
    base: Base,
}

impl LogDensity {
    pub fn new(inner: DistributionSpec, base: Base) -> Result<Self> {
        inner.validate()?;
        let (lo, _) = Density::support(&inner);
        if lo < 0.0 {
            return Err(Error::InvalidParameter {
                name: "support",
                value: lo,
                reason: "log density needs a distribution on the positive half-line",
            });
        }
        Ok(Self { inner, base })
    }

    pub fn inner(&self) -> &DistributionSpec {
        &self.inner
    }

    pub fn base(&self) -> Base {
        self.base
    }

    fn to_x(&self, y: f64) -> f64 {
        (y * self.base.ln()).exp()
    }

    fn to_y(&self, x: f64) -> f64 {
        if x <= 0.0 {
            f64::NEG_INFINITY
        } else {
            x.ln() * self.base.lambda()
        }
    }
}

impl Density for LogDensity {
    fn pdf(&self, y: f64) -> f64 {
        let x = self.to_x(y);
        if x == 0.0 || !x.is_finite() {
            return 0.0;
        }
        let v = self.inner.pdf(x) * x * self.base.ln();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    }

    fn upper_tail(&self, t: f64) -> f64 {
        self.inner.upper_tail(self.to_x(t))
    }

    fn lower_tail(&self, t: f64) -> f64 {
        self.inner.lower_tail(self.to_x(t))
    }

    fn exact_tails(&self) -> bool {
        self.inner.exact_tails()
    }

    fn center(&self) -> f64 {
        self.to_y(self.inner.center())
    }

    fn support(&self) -> (f64, f64) {
        let (lo, hi) = Density::support(&self.inner);
        (self.to_y(lo), self.to_y(hi))
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner
            .breakpoints()
            .into_iter()
            .filter(|&k| k > 0.0)
            .map(|k| self.to_y(k))
            .collect()
    }

    fn tail_class(&self) -> TailClass {
        TailClass::Light
    }
}
