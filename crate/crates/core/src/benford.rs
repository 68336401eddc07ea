//! Benford verdicts, Benford spectra and the seed-generated families.
//!
//! Changing the base from `b` to `c` rescales `Y = log_b X` by
//! `ρ = ln b / ln c`, so every base-`c` coefficient is a transform value
//! `ĝ(ρn)` of the base-`b` density.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::distributions::{affine, DistributionSpec};
use crate::numerics::{frac_unchecked, is_near_integer, Base, ComplexValue};
use crate::seeds::{BuiltinSeed, SeedKind};
use crate::special::sinc_pi;
use crate::wrapped::{
    amplitude_phase, coefficients, deviation_bound, sup_deviation, AmplitudePhase, CoefficientSet,
    DEFAULT_GRID, DEFAULT_N_MAX,
};
use crate::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-9;
pub const DEFAULT_SPECTRUM_POINTS: usize = 512;
pub const DEFAULT_SPECTRUM_LOW: f64 = 1.01;
/// Upper end of the default spectrum grid is `b + DEFAULT_SPECTRUM_REACH`.
pub const DEFAULT_SPECTRUM_REACH: f64 = 2.0;
/// Search range and resolution for [`spectrum_upper_bound`].
pub const UPPER_BOUND_RANGE: f64 = 64.0;
pub const UPPER_BOUND_GRID: usize = 1 << 16;

/// Settings shared by the verdict and the spectrum scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenfordOptions {
    pub epsilon: f64,
    pub n_max: usize,
    pub grid: usize,
}

impl Default for BenfordOptions {
    fn default() -> Self {
        Self { epsilon: DEFAULT_EPSILON, n_max: DEFAULT_N_MAX, grid: DEFAULT_GRID }
    }
}

impl BenfordOptions {
    fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: self.epsilon,
                reason: "must be positive and finite",
            });
        }
        if self.n_max == 0 {
            return Err(Error::InvalidParameter { name: "n_max", value: 0.0, reason: "must be at least 1" });
        }
        Ok(())
    }
}

/// Outcome of a single-base analysis. Plain data, so it round-trips through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenfordReport {
    pub base: Base,
    pub n_max: usize,
    pub epsilon: f64,
    /// `c_0..c_{n_max}` as `[re, im]` pairs.
    pub coefficients: Vec<ComplexValue>,
    pub harmonics: AmplitudePhase,
    /// `max_{1<=n<=n_max} |c_n|`.
    pub max_coefficient: f64,
    pub sup_deviation: f64,
    /// `2 Σ |c_n|` including the family's tail bound; `None` when that sum diverges.
    pub deviation_bound: Option<f64>,
    /// Bound on `Σ_{n > n_max} |c_n|`, when the family supplies one.
    pub tail_bound: Option<f64>,
    pub verdict: bool,
}

impl BenfordReport {
    /// Builds a report from precomputed coefficients.
    pub fn from_coefficients(cs: &CoefficientSet, base: Base, opts: &BenfordOptions) -> Result<Self> {
        opts.validate()?;
        let max_coefficient = cs.max_modulus();
        let bound = deviation_bound(cs);
        Ok(Self {
            base,
            n_max: cs.n_max(),
            epsilon: opts.epsilon,
            coefficients: cs.coeffs().to_vec(),
            harmonics: amplitude_phase(cs),
            max_coefficient,
            sup_deviation: sup_deviation(cs, opts.grid)?,
            deviation_bound: bound.is_finite().then_some(bound),
            tail_bound: cs.tail_bound().filter(|t| t.is_finite()),
            verdict: max_coefficient <= opts.epsilon,
        })
    }
}

/// Verdict `max_{1<=n<=n_max} |ĝ(n)| <= ε` for `Y = log_b X`, with the
/// coefficients and deviation figures behind it.
pub fn is_benford(y: &DistributionSpec, base: Base, opts: &BenfordOptions) -> Result<BenfordReport> {
    opts.validate()?;
    let cs = coefficients(y, opts.n_max)?;
    BenfordReport::from_coefficients(&cs, base, opts)
}

/// `ρ = ln b / ln c`, snapped to the nearest integer when within rounding of one.
pub fn rho(b: Base, c: Base) -> f64 {
    let r = b.ln() / c.ln();
    if is_near_integer(r) {
        r.round()
    } else {
        r
    }
}

/// One of the seed-generated families: `Y = Z + U` with `Z` normal, Cauchy
/// or Laplace around `mu` with scale `sigma`, and `U ~ U[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenfordFamily {
    pub family: SeedKind,
    pub mu: f64,
    pub sigma: f64,
}

impl BenfordFamily {
    pub fn new(family: SeedKind, mu: f64, sigma: f64) -> Result<Self> {
        BuiltinSeed::new(family, mu, sigma)?;
        Ok(Self { family, mu, sigma })
    }

    pub fn seed(&self) -> BuiltinSeed {
        BuiltinSeed { kind: self.family, mu: self.mu, sigma: self.sigma }
    }

    /// Density of `Y = log_b X` at the generating base.
    pub fn log_density(&self) -> DistributionSpec {
        DistributionSpec::SeedDerived { seed: self.seed() }
    }

    /// The family-specific damping factor `C_n` at ratio `ρ`.
    pub fn damping(&self, rho: f64, n: u32) -> f64 {
        let t = self.sigma * rho * n as f64;
        match self.family {
            SeedKind::Gauss => (-2.0 * PI * PI * t * t).exp(),
            SeedKind::Cauchy => (-2.0 * PI * t).exp(),
            SeedKind::Laplace => 1.0 / (1.0 + 4.0 * PI * PI * t * t),
        }
    }
}

/// `A_n = 2 sin(πρn)/(πρn) · C_n` (signed; exactly 0 when `ρn` is an
/// integer) and `θ_n = frac(ρ(½ + μ))`.
pub fn family_amplitude(family: &BenfordFamily, rho: f64, n: u32) -> Result<(f64, f64)> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::InvalidParameter { name: "rho", value: rho, reason: "must be positive and finite" });
    }
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", value: 0.0, reason: "must be at least 1" });
    }
    let x = rho * n as f64;
    let amplitude = if is_near_integer(x) { 0.0 } else { 2.0 * sinc_pi(x) * family.damping(rho, n) };
    Ok((amplitude, frac_unchecked(rho * (0.5 + family.mu))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub c: f64,
    /// `max_{1<=n<=n_max} |ĝ(ρn)|`.
    pub deviation: f64,
    pub member: bool,
    /// Every coefficient vanishes identically, not merely below `ε`.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub base: Base,
    pub epsilon: f64,
    pub n_max: usize,
    pub points: Vec<SpectrumPoint>,
}

impl SpectrumReport {
    pub fn members(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().filter(|p| p.member).map(|p| p.c)
    }

    /// Bases at which the coefficients are structurally zero.
    pub fn exact_members(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().filter(|p| p.exact).map(|p| p.c)
    }
}

/// Membership test of base `c` for the variable with `Y = log_b X ~ y`.
pub fn spectrum_point(y: &DistributionSpec, b: Base, c: f64, epsilon: f64, n_max: usize) -> Result<SpectrumPoint> {
    let cb = Base::new(c)?;
    let r = rho(b, cb);
    let (mut deviation, mut exact) = (0.0f64, true);
    for n in 1..=n_max {
        let t = y.transform_polar(r * n as f64);
        deviation = deviation.max(t.modulus());
        exact &= t.is_zero();
    }
    Ok(SpectrumPoint { c, deviation, member: deviation <= epsilon, exact })
}

/// Scans candidate bases `c_grid` for membership in the Benford spectrum.
pub fn spectrum_scan(
    y: &DistributionSpec,
    b: Base,
    c_grid: &[f64],
    epsilon: f64,
    n_max: usize,
) -> Result<SpectrumReport> {
    BenfordOptions { epsilon, n_max, grid: DEFAULT_GRID }.validate()?;
    y.validate()?;
    let points = c_grid
        .iter()
        .map(|&c| spectrum_point(y, b, c, epsilon, n_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport { base: b, epsilon, n_max, points })
}

/// `points` geometrically spaced values from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && lo > 1.0) {
        return Err(Error::InvalidBase(lo));
    }
    if !(hi.is_finite() && hi > lo) {
        return Err(Error::InvalidParameter { name: "c_max", value: hi, reason: "must exceed the lower end" });
    }
    if points < 2 {
        return Err(Error::InvalidParameter { name: "points", value: points as f64, reason: "need at least 2" });
    }
    let ratio = (hi / lo).ln();
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { hi } else { lo * (ratio * i as f64 / last).exp() })
        .collect())
}

/// Default scan grid: 512 geometric points over `[1.01, b + 2]`.
pub fn default_spectrum_grid(b: Base) -> Vec<f64> {
    geometric_grid(DEFAULT_SPECTRUM_LOW, b.value() + DEFAULT_SPECTRUM_REACH, DEFAULT_SPECTRUM_POINTS)
        .expect("default grid bounds are valid for every base")
}

/// The integral roots `b^{1/m}` lying in `[lo, hi]`.
pub fn integral_roots(b: Base, lo: f64, hi: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut m = 1u32;
    loop {
        let r = (b.ln() / m as f64).exp();
        if r < lo || m > 1_000_000 {
            break;
        }
        if r <= hi {
            roots.push(r);
        }
        m += 1;
    }
    roots
}

/// Density of `log_c X` for Whittaker's variable built at base `b`:
/// the Fejér dual with `a = 1` scaled by `ρ`.
pub fn whittaker_log_density(b: Base, c: Base) -> DistributionSpec {
    affine(DistributionSpec::FejerDual { a: 1.0 }, rho(b, c), 0.0).expect("ρ is positive")
}

/// Density of `ln X` for Whittaker's variable built at base `b`.
pub fn whittaker_ln_density(b: Base) -> DistributionSpec {
    affine(DistributionSpec::FejerDual { a: 1.0 }, b.ln(), 0.0).expect("ln b is positive")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBound {
    /// Every Benford base of `X` lies below this value.
    pub bound: f64,
    /// Extent `r` of the initial interval on which `Re ĝ_ln > 0`.
    pub r: f64,
    /// False when the transform stayed positive over the whole search range;
    /// `bound` then only reflects that range.
    pub bounded: bool,
}

/// Upper bound `e^{1/r}` on the Benford spectrum, where `r` is the first
/// point at which the real part of the transform of the density of `ln X`
/// stops being positive.
pub fn spectrum_upper_bound(y_ln: &DistributionSpec) -> Result<SpectrumBound> {
    y_ln.validate()?;
    let positive = |w: f64| y_ln.transform_polar(w).real_sign() > 0.0;
    let step = UPPER_BOUND_RANGE / UPPER_BOUND_GRID as f64;
    let first_bad = (1..=UPPER_BOUND_GRID).find(|&i| !positive(i as f64 * step));
    let Some(i) = first_bad else {
        return Ok(SpectrumBound {
            bound: (1.0 / UPPER_BOUND_RANGE).exp(),
            r: UPPER_BOUND_RANGE,
            bounded: false,
        });
    };
    let (mut lo, mut hi) = ((i - 1) as f64 * step, i as f64 * step);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if positive(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SpectrumBound { bound: (1.0 / hi).exp(), r: hi, bounded: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::convolve;
    use crate::seeds::seed_coefficient;
    use crate::wrapped::{amplitude_phase, coefficients};
    use proptest::prelude::*;

    fn b10() -> Base {
        Base::TEN
    }

    #[test]
    fn verdict_examples() {
        let opts = BenfordOptions::default();
        let whittaker = DistributionSpec::fejer_dual(1.0).unwrap();
        let report = is_benford(&whittaker, b10(), &opts).unwrap();
        assert!(report.verdict);
        assert_eq!(report.max_coefficient, 0.0);
        assert_eq!(report.sup_deviation, 0.0);
        assert_eq!(report.deviation_bound, Some(0.0));

        for s in [0.1, 0.5, 1.0] {
            let r = is_benford(&DistributionSpec::normal(0.2, s).unwrap(), b10(), &opts).unwrap();
            assert_eq!(r.verdict, r.max_coefficient <= opts.epsilon);
            assert!(r.sup_deviation <= r.deviation_bound.unwrap() + 1e-15);
        }
        assert!(!is_benford(&DistributionSpec::normal(0.0, 0.5).unwrap(), b10(), &opts).unwrap().verdict);

        let rect = is_benford(&DistributionSpec::uniform_sym(0.5).unwrap(), b10(), &opts).unwrap();
        assert!(rect.verdict, "{}", rect.max_coefficient);
        assert_eq!(rect.deviation_bound, None);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = is_benford(&DistributionSpec::cauchy(0.3, 0.2).unwrap(), b10(), &BenfordOptions::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: BenfordReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(b10(), Base::new(10f64.sqrt()).unwrap()), 2.0);
        assert_eq!(rho(b10(), b10()), 1.0);
        assert!((rho(b10(), Base::new(2.0).unwrap()) - core::f64::consts::LOG2_10).abs() < 1e-14);
    }

    #[test]
    fn family_amplitude_examples() {
        for kind in SeedKind::ALL {
            let f = BenfordFamily::new(kind, 0.3, 0.4).unwrap();
            for m in 1..=5 {
                for n in 1..=10 {
                    assert_eq!(family_amplitude(&f, m as f64, n).unwrap().0, 0.0);
                }
            }
            // C_n decreasing in n, ρ and σ
            let wider = BenfordFamily::new(kind, 0.3, 0.5).unwrap();
            assert!(f.damping(0.7, 2) < f.damping(0.7, 1));
            assert!(f.damping(0.9, 1) < f.damping(0.7, 1));
            assert!(wider.damping(0.7, 1) < f.damping(0.7, 1));
        }
        let sigma: f64 = 0.4;
        let gauss = BenfordFamily::new(SeedKind::Gauss, 0.0, sigma).unwrap();
        let (a1, theta) = family_amplitude(&gauss, 0.5, 1).unwrap();
        let expect = 4.0 / PI * (-PI * PI * sigma * sigma / 2.0).exp();
        assert!((a1 - expect).abs() < 1e-15);
        assert_eq!(theta, 0.25);
    }

    #[test]
    fn family_formula_matches_explicit_construction() {
        for kind in SeedKind::ALL {
            let f = BenfordFamily::new(kind, 0.3, 0.25).unwrap();
            let z = match kind {
                SeedKind::Gauss => DistributionSpec::normal(f.mu, f.sigma),
                SeedKind::Cauchy => DistributionSpec::cauchy(f.mu, f.sigma),
                SeedKind::Laplace => DistributionSpec::bilateral_exp(f.mu, f.sigma),
            }
            .unwrap();
            for &r in &[0.3, 0.7, 1.3, 2.5] {
                let y = affine(convolve(z.clone(), DistributionSpec::uniform_zero(1.0).unwrap()), r, 0.0).unwrap();
                let cs = coefficients(&y, 6).unwrap();
                let ap = amplitude_phase(&cs);
                for h in &ap.harmonics {
                    let (a, theta) = family_amplitude(&f, r, h.n as u32).unwrap();
                    assert!((h.amplitude - a.abs()).abs() < 1e-10, "{kind:?} ρ={r} n={}", h.n);
                    for i in 0..40 {
                        let u = i as f64 / 40.0;
                        let signed = a * (2.0 * PI * h.n as f64 * (u - theta)).cos();
                        assert!((h.eval(u) - signed).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_phase_is_independent_of_n() {
        let f = BenfordFamily::new(SeedKind::Gauss, 0.15, 0.1).unwrap();
        let r = 0.3; // sin(πρn) > 0 for n = 1..3
        let y = affine(f.log_density(), r, 0.0).unwrap();
        let ap = amplitude_phase(&coefficients(&y, 3).unwrap());
        let theta = frac_unchecked(r * (0.5 + f.mu));
        for h in &ap.harmonics {
            // θ_n is determined modulo 1/n
            let k = h.n as f64;
            let gap = frac_unchecked(k * (h.phase - theta) + 0.5) - 0.5;
            assert!(gap.abs() < 1e-12, "n={} θ={} vs {theta}", h.n, h.phase);
        }
        assert!((ap.harmonics[0].phase - theta).abs() < 1e-12);
    }

    #[test]
    fn seed_coefficient_cross_derivation() {
        for kind in SeedKind::ALL {
            let f = BenfordFamily::new(kind, -0.2, 0.3).unwrap();
            for &r in &[0.7, 1.3, 2.5] {
                for n in 1..=3 {
                    let c = seed_coefficient(&f.seed(), r, n as i64).unwrap();
                    let (a, _) = family_amplitude(&f, r, n).unwrap();
                    assert!((2.0 * c.modulus() - a.abs()).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn whittaker_spectrum_is_the_interval_up_to_b() {
        let b = Base::new(7.0).unwrap();
        let y = DistributionSpec::fejer_dual(1.0).unwrap();
        let grid = default_spectrum_grid(b);
        assert_eq!(grid.len(), 512);
        let report = spectrum_scan(&y, b, &grid, DEFAULT_EPSILON, DEFAULT_N_MAX).unwrap();
        for p in &report.points {
            if p.c <= 7.0 {
                assert!(p.member, "{p:?}");
            }
            if p.c >= 7.05 {
                assert!(!p.member, "{p:?}");
            }
        }
        assert!(spectrum_point(&y, b, 7.0, DEFAULT_EPSILON, 32).unwrap().member);
    }

    #[test]
    fn whittaker_log_density_examples() {
        let b = Base::new(7.0).unwrap();
        let same = whittaker_log_density(b, b);
        for &xi in &[0.25, 0.5, 1.0, 2.0] {
            assert_eq!(same.transform(xi).re, (1.0 - xi).max(0.0));
        }
        let below = whittaker_log_density(b, Base::new(3.0).unwrap());
        assert!((1..=32).all(|n| below.transform(n as f64) == ComplexValue::ZERO));
        let above = whittaker_log_density(b, Base::new(20.0).unwrap());
        let r = rho(b, Base::new(20.0).unwrap());
        assert!((above.transform(1.0).re - (1.0 - r)).abs() < 1e-15);
    }

    #[test]
    fn gauss_benford_members_are_integral_roots() {
        let f = BenfordFamily::new(SeedKind::Gauss, 0.0, 0.4).unwrap();
        let b = b10();
        let mut grid = default_spectrum_grid(b);
        let roots = integral_roots(b, grid[0], *grid.last().unwrap());
        grid.extend(&roots);
        let report = spectrum_scan(&f.log_density(), b, &grid, DEFAULT_EPSILON, 32).unwrap();
        for p in &report.points {
            let is_root = roots.contains(&p.c);
            if is_root {
                assert!(p.member && p.deviation == 0.0);
            }
        }
        // at moderate ρ the coefficients are clearly nonzero off the roots
        let p = spectrum_point(&f.log_density(), b, 10f64.powf(1.0 / 0.5), DEFAULT_EPSILON, 32).unwrap();
        assert!(!p.member);
    }

    #[test]
    fn exact_membership_separates_zeros_from_underflow() {
        let b = b10();
        let mut grid = default_spectrum_grid(b);
        let roots = integral_roots(b, grid[0], *grid.last().unwrap());
        grid.extend(&roots);
        let gauss = BenfordFamily::new(SeedKind::Gauss, 0.0, 0.4).unwrap().log_density();
        let report = spectrum_scan(&gauss, b, &grid, DEFAULT_EPSILON, 32).unwrap();
        let mut exact: Vec<f64> = report.exact_members().collect();
        exact.sort_by(f64::total_cmp);
        let mut expect = roots.clone();
        expect.sort_by(f64::total_cmp);
        assert_eq!(exact, expect);
        // far below the first roots the coefficients underflow, which is ε-membership only
        assert!(report.points.iter().any(|p| p.member && !p.exact));

        let lognormal = DistributionSpec::log_of_lognormal(1.0, 0.8, b).unwrap();
        let report = spectrum_scan(&lognormal, b, &grid, DEFAULT_EPSILON, 32).unwrap();
        assert_eq!(report.exact_members().count(), 0);

        let w = Base::new(7.0).unwrap();
        let report = spectrum_scan(&whittaker_log_density(w, w), w, &default_spectrum_grid(w), DEFAULT_EPSILON, 32)
            .unwrap();
        assert!(report.points.iter().all(|p| p.exact == (p.c <= 7.0)));
    }

    #[test]
    fn lognormal_spectrum_has_no_members_at_moderate_bases() {
        let y = DistributionSpec::log_of_lognormal(1.0, 0.8, b10()).unwrap();
        let grid = geometric_grid(2.5, 12.0, 200).unwrap();
        let report = spectrum_scan(&y, b10(), &grid, DEFAULT_EPSILON, 32).unwrap();
        assert_eq!(report.members().count(), 0);
    }

    #[test]
    fn upper_bound_examples() {
        for bv in [2.0, 7.0, 10.0] {
            let b = Base::new(bv).unwrap();
            let ub = spectrum_upper_bound(&whittaker_ln_density(b)).unwrap();
            assert!(ub.bounded);
            assert!((ub.bound - bv).abs() < 1e-9 * bv, "{ub:?}");
        }
        let normal = spectrum_upper_bound(&DistributionSpec::normal(0.0, 3.0).unwrap()).unwrap();
        assert!(!normal.bounded);
        assert_eq!(normal.r, UPPER_BOUND_RANGE);
        // Rect's transform changes sign at 1
        let rect = spectrum_upper_bound(&DistributionSpec::Rect).unwrap();
        assert!(rect.bounded && (rect.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_validation() {
        assert!(geometric_grid(1.0, 5.0, 10).is_err());
        assert!(geometric_grid(3.0, 2.0, 10).is_err());
        let g = geometric_grid(1.5, 6.0, 3).unwrap();
        assert_eq!(g[0], 1.5);
        assert_eq!(g[2], 6.0);
        assert!((g[1] - 3.0).abs() < 1e-12);
        assert!(spectrum_scan(&DistributionSpec::Rect, b10(), &[0.5], 1e-9, 32).is_err());
    }

    fn family_strategy() -> impl Strategy<Value = DistributionSpec> {
        (0usize..4, -1.0f64..1.0, 0.05f64..0.6).prop_map(|(k, m, s)| match k {
            0 => DistributionSpec::normal(m, s).unwrap(),
            1 => DistributionSpec::cauchy(m, s).unwrap(),
            2 => DistributionSpec::bilateral_exp(m, s).unwrap(),
            _ => DistributionSpec::SeedDerived { seed: BuiltinSeed::new(SeedKind::Gauss, m, s).unwrap() },
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn roots_inherit_small_coefficients(y in family_strategy(), m in 1usize..5) {
            let n_max = 32;
            let eps = (1..=n_max).map(|n| y.transform(n as f64).modulus()).fold(0.0, f64::max);
            for n in 1..=n_max / m {
                prop_assert!(y.transform((m * n) as f64).modulus() <= eps);
            }
        }

        #[test]
        fn scaling_keeps_moduli(y in family_strategy(), k in 0.01f64..100.0) {
            let shifted = affine(y.clone(), 1.0, k.log10()).unwrap();
            for n in 1..=16 {
                let (a, b) = (y.transform(n as f64), shifted.transform(n as f64));
                prop_assert!((a.modulus() - b.modulus()).abs() <= 1e-12);
                let factor = ComplexValue::cis(-2.0 * PI * n as f64 * k.log10());
                prop_assert!((a * factor - b).modulus() <= 1e-12);
            }
        }

        #[test]
        fn products_with_benford_factors_are_benford(y in family_strategy()) {
            let whittaker = DistributionSpec::fejer_dual(1.0).unwrap();
            let product = convolve(whittaker.clone(), y.clone());
            for n in 1..=32 {
                let xi = n as f64;
                prop_assert_eq!(product.transform(xi), ComplexValue::ZERO);
                let expect = whittaker.transform(xi) * y.transform(xi);
                prop_assert!((product.transform(xi) - expect).modulus() <= 1e-15);
            }
        }

        #[test]
        fn spectra_of_factors_are_contained(mu in -1.0f64..1.0, sigma in 0.1f64..0.6, r in 1.2f64..6.0) {
            let b = b10();
            let grid = geometric_grid(1.05, 14.0, 64).unwrap();
            let mut grid = grid;
            grid.extend(integral_roots(b, 1.05, 14.0));
            let left = BenfordFamily::new(SeedKind::Cauchy, mu, sigma).unwrap().log_density();
            let right = whittaker_log_density(b, Base::new(r).unwrap());
            let right = affine(right, 1.0, 0.0).unwrap();
            let both = convolve(left.clone(), right.clone());
            let eps = DEFAULT_EPSILON;
            let l = spectrum_scan(&left, b, &grid, eps, 32).unwrap();
            let rr = spectrum_scan(&right, b, &grid, eps, 32).unwrap();
            let p = spectrum_scan(&both, b, &grid, eps, 32).unwrap();
            for ((a, c), d) in l.points.iter().zip(&rr.points).zip(&p.points) {
                if a.member || c.member {
                    prop_assert!(d.member, "c={}", d.c);
                }
            }
        }
    }
}
