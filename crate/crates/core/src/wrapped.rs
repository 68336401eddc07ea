//! Density of `⟨Y⟩` on `[0, 1)`, computed two ways: the lattice sum
//! `Σ_k g(k + u)` and the Fourier series with coefficients `c_n = ĝ(n)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::distributions::{Density, DistributionSpec, JumpExpansion, TailClass};
use crate::numerics::{frac_unchecked, is_near_integer, Base, ComplexValue};
use crate::quad::Quadrature;
use crate::{Error, Result};

pub const DEFAULT_N_MAX: usize = 32;
pub const DEFAULT_GRID: usize = 4096;
pub const MIN_GRID: usize = 64;
/// Widest lattice window before a tolerance is declared unreachable.
pub const MAX_LATTICE_TERMS: i64 = 1 << 20;
/// Tolerance allowed on `c_0 = 1` and `|c_n| <= 1`.
pub const NORMALIZATION_TOL: f64 = 1e-10;

// --- lattice sums -----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
enum Remainder {
    /// Nothing outside the window is above tolerance.
    None,
    /// Remaining points approximated by the integral over their midpoint cells.
    Midpoint,
    /// Fejér tail with an integer frequency: the numerator is constant on the lattice.
    FejerExact { a: f64, location: f64 },
    /// Fejér tail with a non-integer frequency: the oscillating part is bounded, not summed.
    FejerAverage { a: f64, location: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Window {
    lo: i64,
    hi: i64,
    remainder: Remainder,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "tol", value: tol, reason: "must be positive and finite" })
    }
}

fn check_unit(u: f64) -> Result<()> {
    if (0.0..1.0).contains(&u) {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "u", value: u, reason: "must lie in [0, 1)" })
    }
}

/// `ψ'(x) = Σ_{j>=0} 1/(x + j)²` by its asymptotic series; accurate for `x >= 10`.
fn trigamma_tail(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r + r2 * (0.5 + r * (1.0 / 6.0 - r2 * (1.0 / 30.0 - r2 * (1.0 / 42.0 - r2 / 30.0))))
}

fn central_slope<D: Density + ?Sized>(d: &D, y: f64) -> f64 {
    let h = 0.25;
    (d.pdf(y + h) - d.pdf(y - h)) / (2.0 * h)
}

/// Smallest `k` in `[start, start + MAX]` with `done(k)`, searching upward
/// by doubling and then bisecting; `Err(last)` when the cap is hit.
fn grow(start: i64, done: impl Fn(i64) -> bool) -> core::result::Result<i64, i64> {
    if done(start) {
        return Ok(start);
    }
    let mut step = 1i64;
    let mut prev = start;
    loop {
        if step > MAX_LATTICE_TERMS {
            return Err(start + MAX_LATTICE_TERMS);
        }
        let k = start + step;
        if done(k) {
            let (mut lo, mut hi) = (prev, k);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if done(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        prev = k;
        step *= 2;
    }
}

fn plan<D: Density + ?Sized>(d: &D, tol: f64) -> Result<Window> {
    let class = d.tail_class();
    if let TailClass::Compact { lo, hi } = class {
        let window = Window { lo: lo.floor() as i64 - 1, hi: hi.ceil() as i64, remainder: Remainder::None };
        if window.hi - window.lo > 2 * MAX_LATTICE_TERMS {
            return Err(Error::ToleranceUnreachable { requested: tol, achievable: 1.0 });
        }
        return Ok(window);
    }
    let center = d.center();
    let k0 = if center.is_finite() { center.floor() as i64 } else { 0 };
    let unreachable = |achievable: f64| Error::ToleranceUnreachable { requested: tol, achievable };

    match class {
        TailClass::Fejer { a, location } => {
            let integer = is_near_integer(a);
            let norm = 1.0 / (2.0 * a * PI * PI);
            // distance at which the asymptotic series and the oscillation bound are both good enough
            let mut reach = 20.0f64;
            if !integer {
                let s = (PI * a).sin().abs();
                reach = reach.max((4.0 * norm / (s * tol)).sqrt());
            }
            if reach > MAX_LATTICE_TERMS as f64 {
                let s = (PI * a).sin().abs();
                return Err(unreachable(4.0 * norm / (s * (MAX_LATTICE_TERMS as f64).powi(2))));
            }
            let hi = (location + reach).ceil() as i64;
            let lo = (location - reach).floor() as i64;
            let remainder = if integer {
                Remainder::FejerExact { a, location }
            } else {
                Remainder::FejerAverage { a, location }
            };
            Ok(Window { lo, hi, remainder })
        }
        TailClass::Heavy if d.exact_tails() => {
            let target = tol / 4.0;
            let hi = grow(k0 + 2, |k| central_slope(d, k as f64 + 0.5).abs() / 24.0 <= target)
                .map_err(|k| unreachable(4.0 * central_slope(d, k as f64 + 0.5).abs() / 24.0))?;
            let lo = -grow(-(k0 - 2), |k| central_slope(d, -k as f64 + 0.5).abs() / 24.0 <= target)
                .map_err(|k| unreachable(4.0 * central_slope(d, -k as f64 + 0.5).abs() / 24.0))?;
            Ok(Window { lo, hi, remainder: Remainder::Midpoint })
        }
        _ => {
            let half = tol / 2.0;
            let hi = grow(k0 + 1, |k| d.upper_tail(k as f64) < half)
                .map_err(|k| unreachable(2.0 * d.upper_tail(k as f64)))?;
            let lo = -grow(-(k0 - 1), |k| d.lower_tail(-k as f64 + 1.0) < half)
                .map_err(|k| unreachable(2.0 * d.lower_tail(-k as f64 + 1.0)))?;
            Ok(Window { lo, hi, remainder: Remainder::None })
        }
    }
}

/// Approximate `Σ_{k > hi} g(k + v) + Σ_{k < lo} g(k + v)`.
fn outside<D: Density + ?Sized>(d: &D, w: &Window, v: f64) -> f64 {
    let (lo, hi) = (w.lo as f64, w.hi as f64);
    match w.remainder {
        Remainder::None => 0.0,
        Remainder::Midpoint => d.upper_tail(hi + v + 0.5) + d.lower_tail(lo + v - 0.5),
        Remainder::FejerExact { a, location } => {
            let up = hi + 1.0 + v - location;
            let down = location - v - lo + 1.0;
            let num = |x: f64| 1.0 - (2.0 * PI * a * x).cos();
            (num(up) * trigamma_tail(up) + num(down) * trigamma_tail(down)) / (2.0 * a * PI * PI)
        }
        Remainder::FejerAverage { a, location } => {
            let up = hi + 1.0 + v - location;
            let down = location - v - lo + 1.0;
            (trigamma_tail(up) + trigamma_tail(down)) / (2.0 * a * PI * PI)
        }
    }
}

/// Compensated sum, so long windows do not accumulate rounding.
fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Wrapped density `Σ_k g(k + u)`, with the window chosen so that the
/// neglected (or approximated) part is below `tol`.
pub fn wrapped_pdf_lattice<D: Density + ?Sized>(y: &D, u: f64, tol: f64) -> Result<f64> {
    check_unit(u)?;
    check_tol(tol)?;
    let w = plan(y, tol)?;
    let inside = neumaier((w.lo..=w.hi).map(|k| y.pdf(k as f64 + u)));
    Ok(inside + outside(y, &w, u))
}

/// `Pr(⟨Y⟩ <= u) = Σ_k Pr(k < Y <= k + u)`.
pub fn wrapped_cdf<D: Density + ?Sized>(y: &D, u: f64, tol: f64) -> Result<f64> {
    check_unit(u)?;
    check_tol(tol)?;
    if u == 0.0 {
        return Ok(0.0);
    }
    let w = plan(y, tol)?;
    let count = (w.hi - w.lo + 1) as f64;
    let q = Quadrature::with_tolerance((tol / (4.0 * count)).max(1e-15));
    let breaks = y.breakpoints();
    let center = y.center();
    let cell = |k: i64| {
        let (a, b) = (k as f64, k as f64 + u);
        if y.exact_tails() {
            if a >= center {
                y.upper_tail(a) - y.upper_tail(b)
            } else {
                y.lower_tail(b) - y.lower_tail(a)
            }
        } else {
            q.integrate_with_breaks(|x| y.pdf(x), a, b, &breaks).value
        }
    };
    let inside = neumaier((w.lo..=w.hi).map(cell));
    let beyond = if w.remainder == Remainder::None {
        0.0
    } else {
        Quadrature::with_tolerance(tol / 4.0).integrate(|v| outside(y, &w, v), 0.0, u).value
    };
    Ok((inside + beyond).clamp(0.0, 1.0))
}

// --- Fourier coefficients ---------------------------------------------------

/// `c_0, …, c_{n_max}` of a wrapped density; `c_{-n}` is the conjugate of `c_n`.
///
/// Serializes as a JSON array of `[re, im]` pairs. The tail bound and the
/// jump expansion used to sum the series past `n_max` are kept only in memory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ComplexValue>", into = "Vec<ComplexValue>")]
pub struct CoefficientSet {
    coeffs: Vec<ComplexValue>,
    source: Option<DistributionSpec>,
    tail_bound: Option<f64>,
    remainder: Option<JumpExpansion>,
}

impl TryFrom<Vec<ComplexValue>> for CoefficientSet {
    type Error = Error;

    fn try_from(coeffs: Vec<ComplexValue>) -> Result<Self> {
        CoefficientSet::from_coefficients(coeffs)
    }
}

impl From<CoefficientSet> for Vec<ComplexValue> {
    fn from(cs: CoefficientSet) -> Self {
        cs.coeffs
    }
}

impl CoefficientSet {
    /// Wraps raw coefficients `c_0..c_{n_max}` after checking normalisation.
    pub fn from_coefficients(coeffs: Vec<ComplexValue>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "n_max",
                value: coeffs.len() as f64 - 1.0,
                reason: "need at least c_0 and c_1",
            });
        }
        let c0 = coeffs[0];
        if (c0 - ComplexValue::ONE).modulus() > NORMALIZATION_TOL {
            return Err(Error::InvalidParameter { name: "c_0", value: c0.re, reason: "must equal 1" });
        }
        for c in &coeffs {
            if !c.is_finite() || c.modulus() > 1.0 + NORMALIZATION_TOL {
                return Err(Error::InvalidParameter {
                    name: "c_n",
                    value: c.modulus(),
                    reason: "modulus must be at most 1",
                });
            }
        }
        Ok(Self { coeffs, source: None, tail_bound: None, remainder: None })
    }

    /// Sets a bound on `Σ_{n > n_max} |c_n|`.
    pub fn with_tail_bound(mut self, bound: f64) -> Self {
        self.tail_bound = Some(bound);
        self
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_0..c_{n_max}`.
    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    /// `c_n` for any `|n| <= n_max`.
    pub fn get(&self, n: i64) -> Option<ComplexValue> {
        let c = *self.coeffs.get(n.unsigned_abs() as usize)?;
        Some(if n < 0 { c.conj() } else { c })
    }

    pub fn source(&self) -> Option<&DistributionSpec> {
        self.source.as_ref()
    }

    /// Bound on `Σ_{n > n_max} |c_n|`, if the source family supplies one.
    pub fn tail_bound(&self) -> Option<f64> {
        self.tail_bound
    }

    /// Expansion used to sum the series beyond `n_max`.
    pub fn remainder(&self) -> Option<&JumpExpansion> {
        self.remainder.as_ref()
    }

    /// `max_{1<=n<=n_max} |c_n|`.
    pub fn max_modulus(&self) -> f64 {
        self.coeffs[1..].iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max == 0 {
        Err(Error::InvalidParameter { name: "n_max", value: 0.0, reason: "must be at least 1" })
    } else {
        Ok(())
    }
}

/// `c_n = ĝ(n)` from the closed-form transform of `Y`.
pub fn coefficients(y: &DistributionSpec, n_max: usize) -> Result<CoefficientSet> {
    check_n_max(n_max)?;
    y.validate()?;
    let coeffs = (0..=n_max).map(|n| y.transform(n as f64)).collect();
    let tail = y.envelope().tail_sum(n_max);
    let remainder = y.jump_expansion().filter(|j| (n_max + 1) as f64 >= j.valid_from);
    Ok(CoefficientSet { coeffs, source: Some(y.clone()), tail_bound: Some(tail), remainder })
}

/// `ĝ(ξ)` by adaptive quadrature of the density, for densities without a
/// closed-form transform.
pub fn transform_by_quadrature<D: Density + ?Sized>(y: &D, xi: f64, tol: f64) -> Result<ComplexValue> {
    check_tol(tol)?;
    let (lo, hi) = effective_range(y, tol * 1e-2)?;
    let mut breaks = y.breakpoints();
    breaks.push(y.center());
    if xi != 0.0 {
        let period = 1.0 / xi.abs();
        let count = ((hi - lo) / period).ceil().min(1e5) as usize;
        let step = (hi - lo) / count.max(1) as f64;
        breaks.extend((1..count).map(|i| lo + step * i as f64));
    }
    let q = Quadrature { abs_tol: tol * 0.25, rel_tol: 0.0, max_intervals: 200_000 };
    let w = 2.0 * PI * xi;
    let re = q.integrate_with_breaks(|x| y.pdf(x) * (w * x).cos(), lo, hi, &breaks);
    let im = q.integrate_with_breaks(|x| -y.pdf(x) * (w * x).sin(), lo, hi, &breaks);
    Ok(ComplexValue::new(re.value, im.value))
}

fn effective_range<D: Density + ?Sized>(y: &D, mass: f64) -> Result<(f64, f64)> {
    let (lo, hi) = y.support();
    let c = y.center();
    let unreachable = Error::ToleranceUnreachable { requested: mass, achievable: mass };
    let hi = if hi.is_finite() {
        hi
    } else {
        let k = grow(1, |k| y.upper_tail(c + k as f64) < mass).map_err(|_| unreachable.clone())?;
        c + k as f64
    };
    let lo = if lo.is_finite() {
        lo
    } else {
        let k = grow(1, |k| y.lower_tail(c - k as f64) < mass).map_err(|_| unreachable.clone())?;
        c - k as f64
    };
    Ok((lo, hi))
}

/// Coefficients by quadrature of `∫ g(y) e^{-2πiny} dy`, for densities known
/// only pointwise (for example the log of a Gamma variable).
pub fn coefficients_by_quadrature<D: Density + ?Sized>(y: &D, n_max: usize, tol: f64) -> Result<CoefficientSet> {
    check_n_max(n_max)?;
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(ComplexValue::ONE);
    for n in 1..=n_max {
        coeffs.push(transform_by_quadrature(y, n as f64, tol)?);
    }
    CoefficientSet::from_coefficients(coeffs)
}

// --- series evaluation ------------------------------------------------------

const BERNOULLI: [f64; 13] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
];

/// `B_k(x) / k!` for `1 <= k <= 12`.
fn scaled_bernoulli(k: usize, x: f64) -> f64 {
    // B_k(x)/k! = Σ_j (B_j/j!) x^{k-j}/(k-j)!
    let mut total = 0.0;
    let mut j_fact = 1.0;
    for (j, &b) in BERNOULLI.iter().enumerate().take(k + 1) {
        if j > 0 {
            j_fact *= j as f64;
        }
        if b != 0.0 {
            let p = k - j;
            let p_fact: f64 = (1..=p).map(|i| i as f64).product();
            total += b / j_fact * x.powi(p as i32) / p_fact;
        }
    }
    total
}

/// `Σ_{|n| > n_max} ĝ(n) e^{2πinu}` for a density described by its jumps.
///
/// Uses `Σ_{n≠0} e^{2πiny}/(2πin)^k = -B_k(y)/k!` on `[0, 1)` (with the
/// symmetric value 0 for `k = 1` at `y = 0`) minus the retained terms.
fn jump_remainder(expansion: &JumpExpansion, n_max: usize, u: f64) -> f64 {
    let mut total = 0.0;
    for j in &expansion.jumps {
        let k = j.order as usize + 1;
        let y = frac_unchecked(u - j.at);
        let full = if k == 1 && y == 0.0 { 0.0 } else { -scaled_bernoulli(k, y) };
        let shift = k as f64 * core::f64::consts::FRAC_PI_2;
        let head: f64 = (1..=n_max)
            .map(|n| {
                let w = 2.0 * PI * n as f64;
                2.0 * (w * y - shift).cos() / w.powi(k as i32)
            })
            .sum();
        total += j.weight * (full - head);
    }
    total
}

/// `1 + Σ_{n=1}^{n_max} 2 Re(c_n e^{2πinu})`, plus the summed jump
/// expansion past `n_max` when the source family has one.
pub fn wrapped_pdf_series(cs: &CoefficientSet, u: f64) -> f64 {
    1.0 + series_excess(cs, u)
}

/// `g̃(u) - 1`, summed without the constant so small values keep full precision.
fn series_excess(cs: &CoefficientSet, u: f64) -> f64 {
    let mut sum = 0.0;
    for (n, c) in cs.coeffs.iter().enumerate().skip(1) {
        let t = 2.0 * PI * n as f64 * u;
        sum += 2.0 * (c.re * t.cos() - c.im * t.sin());
    }
    if let Some(expansion) = &cs.remainder {
        sum += jump_remainder(expansion, cs.n_max(), u);
    }
    sum
}

/// `(u_i, g̃(u_i))` at `u_i = i / points`.
pub fn series_grid(cs: &CoefficientSet, points: usize) -> Vec<(f64, f64)> {
    (0..points)
        .map(|i| {
            let u = i as f64 / points as f64;
            (u, wrapped_pdf_series(cs, u))
        })
        .collect()
}

/// Mass the truncated series assigns to each of `bins` equal bins of `[0, 1)`.
pub fn wrapped_bin_masses(cs: &CoefficientSet, bins: usize) -> Vec<f64> {
    let width = 1.0 / bins as f64;
    (0..bins)
        .map(|j| {
            let (a, b) = (j as f64 * width, (j + 1) as f64 * width);
            let mut mass = width;
            for (n, c) in cs.coeffs.iter().enumerate().skip(1) {
                let w = 2.0 * PI * n as f64;
                // ∫_a^b e^{iwu} du = (e^{iwb} - e^{iwa}) / (iw)
                let diff = ComplexValue::cis(w * b) - ComplexValue::cis(w * a);
                let integral = ComplexValue::new(diff.im / w, -diff.re / w);
                mass += 2.0 * (*c * integral).re;
            }
            mass
        })
        .collect()
}

// --- amplitude / phase ------------------------------------------------------

/// One term `A_n cos(2πn(u - θ_n))` of the real form of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub n: usize,
    pub amplitude: f64,
    pub phase: f64,
}

impl Harmonic {
    /// `A_n cos(2πn(u - θ_n))`.
    pub fn eval(&self, u: f64) -> f64 {
        self.amplitude * (2.0 * PI * self.n as f64 * (u - self.phase)).cos()
    }

    /// Classical cosine and sine coefficients `(a_n, b_n)`, with `c_n = ½(a_n - i b_n)`.
    pub fn classical(&self) -> (f64, f64) {
        let t = 2.0 * PI * self.n as f64 * self.phase;
        (self.amplitude * t.cos(), self.amplitude * t.sin())
    }
}

/// Amplitudes and phases for `n = 1..n_max`; serializes as a JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AmplitudePhase {
    pub harmonics: Vec<Harmonic>,
}

/// `A_n = 2|c_n| >= 0` and `θ_n = frac(-arg(c_n) / 2πn)`; `θ_n = 0` when `c_n = 0`.
pub fn amplitude_phase(cs: &CoefficientSet) -> AmplitudePhase {
    let harmonics = cs
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &c)| {
            let amplitude = 2.0 * c.modulus();
            let phase = if amplitude == 0.0 {
                0.0
            } else {
                frac_unchecked(-c.arg() / (2.0 * PI * n as f64))
            };
            Harmonic { n, amplitude, phase }
        })
        .collect();
    AmplitudePhase { harmonics }
}

// --- deviation from uniformity ----------------------------------------------

/// `max_u |g̃(u) - 1|` on a uniform grid, refined once around the maximiser.
pub fn sup_deviation(cs: &CoefficientSet, grid_size: usize) -> Result<f64> {
    if grid_size < MIN_GRID {
        return Err(Error::InvalidParameter {
            name: "grid_size",
            value: grid_size as f64,
            reason: "must be at least 64",
        });
    }
    let dev = |u: f64| series_excess(cs, u).abs();
    let h = 1.0 / grid_size as f64;
    let (mut best_u, mut best) = (0.0, dev(0.0));
    for i in 1..grid_size {
        let u = i as f64 * h;
        let v = dev(u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    // refine: dense pass over the neighbouring cells
    const SUB: usize = 64;
    for j in 0..=2 * SUB {
        let u = best_u - h + j as f64 * h / SUB as f64;
        let v = dev(frac_unchecked(u));
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// `2 Σ_{n=1}^{n_max} |c_n| + 2·(tail bound)`: an upper bound on the sup
/// deviation. Infinite when the family's coefficients are not summable;
/// without a tail bound only the finite part is returned.
pub fn deviation_bound(cs: &CoefficientSet) -> f64 {
    let head: f64 = cs.coeffs[1..].iter().map(|c| c.modulus()).sum();
    2.0 * (head + cs.tail_bound.unwrap_or(0.0))
}

/// `R(s) = exp(-2π²s²)`, the modulus of the first coefficient of `N(m, s²)`.
pub fn r_function(s: f64) -> f64 {
    (-2.0 * PI * PI * s * s).exp()
}

/// Bound `2R/(1 - R)` on the sup deviation for a lognormal with log-scale
/// `sigma`, evaluated at `s = Λ_b σ`.
pub fn lognormal_bound(sigma: f64, b: Base) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter { name: "sigma", value: sigma, reason: "must be positive and finite" });
    }
    let r = r_function(b.lambda() * sigma);
    Ok(2.0 * r / (1.0 - r))
}
