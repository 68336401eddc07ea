//! Seed functions and the exactly-Benford densities they generate.
//!
//! A seed function `H` tends to 0 at `-∞` and 1 at `+∞` and satisfies
//! `H(y) - H(y - 1) >= 0`. The difference `g(y) = H(y) - H(y - 1)` is then a
//! density whose lattice sum telescopes to 1, so `⟨Y⟩` is uniform for `Y ~ g`.
//! When `H` is a cdf, `Y` is simply `Z + U` with `Z ~ H` and `U ~ U[0, 1]`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::distributions::{Envelope, Polar, TailClass};
use crate::numerics::{is_near_integer, ComplexValue};
use crate::quad::Quadrature;
use crate::special::{
    cauchy_cdf, cauchy_quantile, cauchy_sf, laplace_cdf, laplace_quantile, laplace_sf, normal_cdf,
    normal_pdf, normal_quantile, normal_sf, sinc_pi,
};
use crate::{Error, Result};

/// Where the limit conditions `H(-∞) = 0`, `H(+∞) = 1` are probed.
pub const LIMIT_PROBE: f64 = 1e12;
/// Slack allowed on every validation condition.
pub const VALIDATION_SLACK: f64 = 1e-9;
/// The validation grid must reach at least this far on both sides.
pub const GRID_HALF_WIDTH: f64 = 20.0;
pub const DEFAULT_GRID_POINTS: usize = 4001;

/// A differentiable seed function `H` with derivative `h`.
pub trait SeedFunction {
    /// `H(y)`.
    fn cdf(&self, y: f64) -> f64;
    /// `1 - H(y)`; override when it can be computed without cancellation.
    fn sf(&self, y: f64) -> f64 {
        1.0 - self.cdf(y)
    }
    /// `h(y) = H'(y)`.
    fn density(&self, y: f64) -> f64;
    /// Closed-form `ĥ(ξ)`, if known.
    fn density_transform(&self, _xi: f64) -> Option<ComplexValue> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    Gauss,
    Cauchy,
    Laplace,
}

impl SeedKind {
    pub const ALL: [SeedKind; 3] = [SeedKind::Gauss, SeedKind::Cauchy, SeedKind::Laplace];

    pub fn name(self) -> &'static str {
        match self {
            SeedKind::Gauss => "gauss",
            SeedKind::Cauchy => "cauchy",
            SeedKind::Laplace => "laplace",
        }
    }
}

impl core::str::FromStr for SeedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gauss" | "gaussian" | "normal" => Ok(SeedKind::Gauss),
            "cauchy" => Ok(SeedKind::Cauchy),
            "laplace" | "bilateral_exp" => Ok(SeedKind::Laplace),
            _ => Err(Error::InvalidParameter {
                name: "seed",
                value: f64::NAN,
                reason: "expected one of gauss, cauchy, laplace",
            }),
        }
    }
}

/// Location-scale cdf seed: normal, Cauchy or Laplace with location `mu`
/// and scale `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuiltinSeed {
    pub kind: SeedKind,
    pub mu: f64,
    pub sigma: f64,
}

impl BuiltinSeed {
    pub fn new(kind: SeedKind, mu: f64, sigma: f64) -> Result<Self> {
        let seed = Self { kind, mu, sigma };
        seed.validate()?;
        Ok(seed)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::InvalidParameter { name: "mu", value: self.mu, reason: "must be finite" });
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: self.sigma,
                reason: "must be positive and finite",
            });
        }
        Ok(())
    }

    fn z(&self, y: f64) -> f64 {
        (y - self.mu) / self.sigma
    }

    /// Inverse of `H`, for sampling.
    pub fn quantile(&self, p: f64) -> f64 {
        let z = match self.kind {
            SeedKind::Gauss => normal_quantile(p),
            SeedKind::Cauchy => cauchy_quantile(p),
            SeedKind::Laplace => laplace_quantile(p),
        };
        self.mu + self.sigma * z
    }

    /// `ĥ` in polar form.
    pub fn h_transform_polar(&self, xi: f64) -> Polar {
        let t = 2.0 * PI * self.sigma * xi;
        let log_modulus = match self.kind {
            SeedKind::Gauss => -0.5 * t * t,
            SeedKind::Cauchy => -t.abs(),
            SeedKind::Laplace => -(t * t).ln_1p(),
        };
        Polar { log_modulus, phase: -2.0 * PI * self.mu * xi }
    }

    /// Transform of `g = H - H(· - 1)`: `e^{-iπξ} sinc(ξ) ĥ(ξ)`, exactly zero
    /// at nonzero integers.
    pub fn g_transform_polar(&self, xi: f64) -> Polar {
        if xi == 0.0 {
            return Polar::ONE;
        }
        if is_near_integer(xi) {
            return Polar { log_modulus: f64::NEG_INFINITY, phase: 0.0 };
        }
        Polar::from_real(sinc_pi(xi)).shift_phase(-PI * xi) * self.h_transform_polar(xi)
    }

    pub(crate) fn g_envelope(&self) -> Envelope {
        let coef = 1.0 / PI;
        match self.kind {
            SeedKind::Gauss => Envelope::Gaussian { coef, rate: 2.0 * PI * PI * self.sigma * self.sigma },
            SeedKind::Cauchy => Envelope::Exponential { coef, rate: 2.0 * PI * self.sigma },
            SeedKind::Laplace => Envelope::Power {
                coef: coef / (4.0 * PI * PI * self.sigma * self.sigma),
                power: 3.0,
            },
        }
    }

    pub(crate) fn g_upper_tail(&self, t: f64) -> f64 {
        seed_upper_tail(self, t)
    }

    pub(crate) fn g_lower_tail(&self, t: f64) -> f64 {
        seed_lower_tail(self, t)
    }

    pub(crate) fn g_breakpoints(&self) -> Vec<f64> {
        match self.kind {
            SeedKind::Laplace => alloc::vec![self.mu, self.mu + 1.0],
            _ => Vec::new(),
        }
    }

    pub(crate) fn g_tail_class(&self) -> TailClass {
        match self.kind {
            SeedKind::Cauchy => TailClass::Heavy,
            _ => TailClass::Light,
        }
    }
}

impl SeedFunction for BuiltinSeed {
    fn cdf(&self, y: f64) -> f64 {
        let z = self.z(y);
        match self.kind {
            SeedKind::Gauss => normal_cdf(z),
            SeedKind::Cauchy => cauchy_cdf(z),
            SeedKind::Laplace => laplace_cdf(z),
        }
    }

    fn sf(&self, y: f64) -> f64 {
        let z = self.z(y);
        match self.kind {
            SeedKind::Gauss => normal_sf(z),
            SeedKind::Cauchy => cauchy_sf(z),
            SeedKind::Laplace => laplace_sf(z),
        }
    }

    fn density(&self, y: f64) -> f64 {
        let z = self.z(y);
        let unit = match self.kind {
            SeedKind::Gauss => normal_pdf(z),
            SeedKind::Cauchy => 1.0 / (PI * z.mul_add(z, 1.0)),
            SeedKind::Laplace => 0.5 * (-z.abs()).exp(),
        };
        unit / self.sigma
    }

    fn density_transform(&self, xi: f64) -> Option<ComplexValue> {
        Some(self.h_transform_polar(xi).to_complex())
    }
}

/// `g(y) = H(y) - H(y - 1)`, taken from whichever tail avoids cancellation.
pub fn seed_pdf<S: SeedFunction + ?Sized>(seed: &S, y: f64) -> f64 {
    let lower = seed.cdf(y - 1.0);
    let g = if lower > 0.5 {
        seed.sf(y - 1.0) - seed.sf(y)
    } else {
        seed.cdf(y) - lower
    };
    g.max(0.0)
}

fn unit_window_integral<F: Fn(f64) -> f64>(f: F, hi: f64) -> f64 {
    let q = Quadrature { abs_tol: 0.0, rel_tol: 1e-13, max_intervals: 64 };
    q.integrate(f, hi - 1.0, hi).value.clamp(0.0, 1.0)
}

/// `P(Y > t)` for `Y ~ g`: the average of `1 - H` over `[t - 1, t]`.
pub fn seed_upper_tail<S: SeedFunction + ?Sized>(seed: &S, t: f64) -> f64 {
    unit_window_integral(|s| seed.sf(s), t)
}

/// `P(Y < t)` for `Y ~ g`: the average of `H` over `[t - 1, t]`.
pub fn seed_lower_tail<S: SeedFunction + ?Sized>(seed: &S, t: f64) -> f64 {
    unit_window_integral(|s| seed.cdf(s), t)
}

/// Coefficient `ĝ(ρn)` of the base-`c` log density, where `Y` at base `b`
/// comes from `seed` and `ρ = ln b / ln c`:
/// `e^{-iπρn} sin(πρn)/(πρn) · ĥ(ρn)`.
///
/// Exactly zero whenever `ρn` is an integer.
pub fn seed_coefficient<S: SeedFunction + ?Sized>(seed: &S, rho: f64, n: i64) -> Result<ComplexValue> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::InvalidParameter { name: "rho", value: rho, reason: "must be positive and finite" });
    }
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", value: 0.0, reason: "must be nonzero" });
    }
    let xi = rho * n as f64;
    let h_hat = seed.density_transform(xi).ok_or(Error::MissingTransform)?;
    if is_near_integer(xi) {
        return Ok(ComplexValue::ZERO);
    }
    Ok(ComplexValue::cis(-PI * xi) * h_hat.scale(sinc_pi(xi)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedCondition {
    /// `H(-∞) = 0`.
    LowerLimit,
    /// `H(+∞) = 1`.
    UpperLimit,
    /// `H(y) - H(y - 1) >= 0`.
    UnitIncrease,
    /// The grid does not cover the required range.
    GridCoverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedViolation {
    pub y: f64,
    pub condition: SeedCondition,
    /// Offending value: the limit residual, the negative increment, or the
    /// uncovered grid end.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedValidation {
    pub valid: bool,
    pub violations: Vec<SeedViolation>,
}

/// Evenly spaced validation grid over `[-20, 20]`.
pub fn default_validation_grid() -> Vec<f64> {
    let n = DEFAULT_GRID_POINTS;
    let step = 2.0 * GRID_HALF_WIDTH / (n - 1) as f64;
    (0..n).map(|i| -GRID_HALF_WIDTH + step * i as f64).collect()
}

/// Checks the seed conditions on `grid` (limits are probed at `±LIMIT_PROBE`).
pub fn validate_seed<S: SeedFunction + ?Sized>(seed: &S, grid: &[f64]) -> SeedValidation {
    let mut violations = Vec::new();
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo <= -GRID_HALF_WIDTH) {
        violations.push(SeedViolation { y: -GRID_HALF_WIDTH, condition: SeedCondition::GridCoverage, value: lo });
    }
    if !(hi >= GRID_HALF_WIDTH) {
        violations.push(SeedViolation { y: GRID_HALF_WIDTH, condition: SeedCondition::GridCoverage, value: hi });
    }

    let at_lower = seed.cdf(-LIMIT_PROBE);
    if !(at_lower.abs() <= VALIDATION_SLACK) {
        violations.push(SeedViolation { y: -LIMIT_PROBE, condition: SeedCondition::LowerLimit, value: at_lower });
    }
    let at_upper = seed.cdf(LIMIT_PROBE);
    if !((at_upper - 1.0).abs() <= VALIDATION_SLACK) {
        violations.push(SeedViolation { y: LIMIT_PROBE, condition: SeedCondition::UpperLimit, value: at_upper });
    }

    for &y in grid {
        let increment = seed.cdf(y) - seed.cdf(y - 1.0);
        if !(increment >= -VALIDATION_SLACK) {
            violations.push(SeedViolation { y, condition: SeedCondition::UnitIncrease, value: increment });
        }
    }
    SeedValidation { valid: violations.is_empty(), violations }
}
