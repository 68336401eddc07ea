//! Seeded Monte Carlo draws and empirical first-digit statistics.
//!
//! Draws come from ChaCha8 keyed by `(seed, stream)`, so a batch is
//! bit-identical across runs and platforms.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::numerics::{first_digit, frac_unchecked, Base};
use crate::special::{
    cauchy_quantile, chi_square_sf, gamma_p_inverse, laplace_quantile, normal_quantile,
};
use crate::{Error, Result};

/// Acceptance probability of the Fejér rejection sampler: density mass 1
/// over envelope mass `4/π`.
pub const FEJER_ACCEPTANCE: f64 = PI / 4.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleSource {
    Spec(DistributionSpec),
    External,
}

/// How stored values relate to the underlying positive quantity `X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueScale {
    /// Values are `X` itself.
    Linear,
    /// Values are exponents: `X = base^value`. Keeps heavy-tailed exponents
    /// usable without overflowing `X`.
    Exponent { base: Base },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub rng_seed: u64,
    pub stream: u64,
    pub source: SampleSource,
    pub scale: ValueScale,
}

impl SampleBatch {
    /// Wraps ingested values of `X`.
    pub fn external(values: Vec<f64>) -> Self {
        Self { values, rng_seed: 0, stream: 0, source: SampleSource::External, scale: ValueScale::Linear }
    }

    /// Reinterprets the values as exponents of `X = base^value`.
    pub fn exponentiate(mut self, base: Base) -> Self {
        self.scale = ValueScale::Exponent { base };
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `log_b X` for every usable value, and the number excluded
    /// (nonpositive or non-finite).
    pub fn log_values(&self, b: Base) -> (Vec<f64>, usize) {
        let mut out = Vec::with_capacity(self.values.len());
        match self.scale {
            ValueScale::Linear => {
                let inv = 1.0 / b.ln();
                out.extend(self.values.iter().filter(|x| x.is_finite() && **x > 0.0).map(|x| x.ln() * inv));
            }
            ValueScale::Exponent { base } => {
                let k = base.ln() / b.ln();
                out.extend(self.values.iter().filter(|y| y.is_finite()).map(|y| y * k));
            }
        }
        let excluded = self.values.len() - out.len();
        (out, excluded)
    }

    /// Values of `X` (may overflow for exponent batches with large values).
    pub fn linear_values(&self) -> Vec<f64> {
        match self.scale {
            ValueScale::Linear => self.values.clone(),
            ValueScale::Exponent { base } => self.values.iter().map(|y| base.value().powf(*y)).collect(),
        }
    }
}

/// Seeded uniform source on the open interval `(0, 1)`.
pub struct UniformSource {
    rng: ChaCha8Rng,
}

impl UniformSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

/// Rejection sampler for the Fejér dual with `a = 1`, using the envelope
/// `min(1, 1/(π²y²))`.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct FejerSampler {
    pub proposals: u64,
    pub accepted: u64,
}

impl FejerSampler {
    pub fn draw(&mut self, src: &mut UniformSource) -> f64 {
        loop {
            self.proposals += 1;
            // the flat core |y| <= 1/π and the two tails carry equal envelope mass
            let pick = src.uniform();
            let sign = if src.uniform() < 0.5 { -1.0 } else { 1.0 };
            let y = if pick < 0.5 { sign * src.uniform() / PI } else { sign / (PI * src.uniform()) };
            let envelope = if y.abs() <= 1.0 / PI { 1.0 } else { 1.0 / (PI * PI * y * y) };
            let target = DistributionSpec::FejerDual { a: 1.0 }.pdf(y);
            if src.uniform() * envelope <= target {
                self.accepted += 1;
                return y;
            }
        }
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.proposals as f64
    }
}

fn draw(spec: &DistributionSpec, src: &mut UniformSource, fejer: &mut FejerSampler) -> f64 {
    use DistributionSpec::*;
    match spec {
        Normal { m, s } => m + s * normal_quantile(src.uniform()),
        UniformSym { a } => a * (2.0 * src.uniform() - 1.0),
        UniformZero { a } => a * src.uniform(),
        Rect => src.uniform() - 0.5,
        Triangular { a } => a * tri_quantile(src.uniform()),
        Tri => tri_quantile(src.uniform()),
        FejerDual { a } => fejer.draw(src) / a,
        Gamma { alpha, beta } => beta * gamma_p_inverse(*alpha, src.uniform()),
        BilateralExp { m, s } => m + s * laplace_quantile(src.uniform()),
        Cauchy { m, s } => m + s * cauchy_quantile(src.uniform()),
        Affine { inner, c, d } => c * draw(inner, src, fejer) + d,
        Convolution { left, right } => draw(left, src, fejer) + draw(right, src, fejer),
        SeedDerived { seed } => seed.quantile(src.uniform()) + src.uniform(),
    }
}

fn tri_quantile(u: f64) -> f64 {
    if u < 0.5 {
        (2.0 * u).sqrt() - 1.0
    } else {
        1.0 - (2.0 * (1.0 - u)).sqrt()
    }
}

/// `n` independent draws from `spec`, on stream 0 of `seed`.
pub fn sample(spec: &DistributionSpec, n: usize, seed: u64) -> Result<SampleBatch> {
    sample_stream(spec, n, seed, 0)
}

/// Like [`sample`], on an independent stream of the same seed.
pub fn sample_stream(spec: &DistributionSpec, n: usize, seed: u64, stream: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", value: 0.0, reason: "must be at least 1" });
    }
    spec.validate()?;
    let mut src = UniformSource::new(seed, stream);
    let mut fejer = FejerSampler::default();
    let values = (0..n).map(|_| draw(spec, &mut src, &mut fejer)).collect();
    Ok(SampleBatch {
        values,
        rng_seed: seed,
        stream,
        source: SampleSource::Spec(spec.clone()),
        scale: ValueScale::Linear,
    })
}

/// Runs the Fejér sampler for `n` accepted draws and reports its counters.
pub fn fejer_acceptance(n: usize, seed: u64) -> FejerSampler {
    let mut src = UniformSource::new(seed, 0);
    let mut fejer = FejerSampler::default();
    for _ in 0..n {
        fejer.draw(&mut src);
    }
    fejer
}

/// Pearson statistic of `counts` against cell probabilities `probs`.
pub fn chi_square_statistic(counts: &[u64], probs: &[f64]) -> f64 {
    let n: u64 = counts.iter().sum();
    counts
        .iter()
        .zip(probs)
        .filter(|(_, p)| **p > 0.0)
        .map(|(&k, &p)| {
            let e = n as f64 * p;
            (k as f64 - e).powi(2) / e
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigitLawReport {
    pub base: u32,
    pub n: usize,
    pub excluded: usize,
    /// Indexed by digit `1..base`.
    pub counts: Vec<u64>,
    pub observed: Vec<f64>,
    pub expected: Vec<f64>,
    pub chi_square: f64,
    pub degrees_of_freedom: u32,
    pub p_value: f64,
}

impl DigitLawReport {
    pub fn digits(&self) -> impl Iterator<Item = u32> {
        1..self.base
    }
}

/// `log_b(1 + 1/d)` for `d = 1..b`.
pub fn first_digit_law(b: u32) -> Vec<f64> {
    let lb = (b as f64).ln();
    (1..b).map(|d| (1.0 / d as f64).ln_1p() / lb).collect()
}

fn radix(b: Base) -> Result<u32> {
    b.radix().ok_or(Error::NonIntegerBase(b.value()))
}

/// First-digit counts against the logarithmic law, with a chi-square test
/// on `b - 2` degrees of freedom.
pub fn first_digit_table(data: &SampleBatch, b: Base) -> Result<DigitLawReport> {
    let radix = radix(b)?;
    let mut counts = vec![0u64; radix as usize - 1];
    let mut excluded = 0usize;
    match data.scale {
        ValueScale::Linear => {
            for &x in &data.values {
                match first_digit(x, b) {
                    Ok(d) => counts[d as usize - 1] += 1,
                    Err(_) => excluded += 1,
                }
            }
        }
        ValueScale::Exponent { .. } => {
            let (logs, bad) = data.log_values(b);
            excluded = bad;
            let bv = b.value();
            for t in logs {
                // lift values a few ulps under a digit boundary, which is where
                // b^frac(log_b x) lands for exact data such as 2 or 1000
                let s = bv.powf(frac_unchecked(t)) * (1.0 + 8.0 * f64::EPSILON);
                let d = if s >= bv { 1 } else { (s.floor() as u32).clamp(1, radix - 1) };
                counts[d as usize - 1] += 1;
            }
        }
    }
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return Err(Error::EmptyData("no positive finite values"));
    }
    let expected = first_digit_law(radix);
    let observed = counts.iter().map(|&k| k as f64 / n as f64).collect();
    let chi_square = chi_square_statistic(&counts, &expected);
    let degrees_of_freedom = radix - 2;
    let p_value = if degrees_of_freedom == 0 { 1.0 } else { chi_square_sf(chi_square, degrees_of_freedom as f64) };
    Ok(DigitLawReport {
        base: radix,
        n: n as usize,
        excluded,
        counts,
        observed,
        expected,
        chi_square,
        degrees_of_freedom,
        p_value,
    })
}

fn sorted_fracs(data: &SampleBatch, b: Base) -> Result<Vec<f64>> {
    let (logs, _) = data.log_values(b);
    if logs.is_empty() {
        return Err(Error::EmptyData("no positive finite values"));
    }
    let mut fracs: Vec<f64> = logs.into_iter().map(frac_unchecked).collect();
    fracs.sort_by(f64::total_cmp);
    Ok(fracs)
}

/// `max_s |Pr_emp(S_b <= s) - log_b s|` over `grid` points `s = b^{j/grid}`.
pub fn significand_cdf_distance(data: &SampleBatch, b: Base, grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::InvalidParameter { name: "grid", value: grid as f64, reason: "need at least 2 points" });
    }
    let fracs = sorted_fracs(data, b)?;
    let n = fracs.len() as f64;
    Ok((0..grid)
        .map(|j| {
            let t = j as f64 / grid as f64;
            let below = fracs.partition_point(|&f| f <= t) as f64;
            (below / n - t).abs()
        })
        .fold(0.0, f64::max))
}

/// Counts of `frac(log_b X)` in `bins` equal cells of `[0, 1)`.
pub fn frac_histogram(data: &SampleBatch, b: Base, bins: usize) -> Result<(Vec<u64>, usize)> {
    if bins < 2 {
        return Err(Error::InvalidParameter { name: "bins", value: bins as f64, reason: "need at least 2 bins" });
    }
    let (logs, excluded) = data.log_values(b);
    if logs.is_empty() {
        return Err(Error::EmptyData("no positive finite values"));
    }
    let mut counts = vec![0u64; bins];
    for t in logs {
        let i = ((frac_unchecked(t) * bins as f64) as usize).min(bins - 1);
        counts[i] += 1;
    }
    Ok((counts, excluded))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityTest {
    pub n: usize,
    pub excluded: usize,
    pub bins: usize,
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Chi-square test of `frac(log_b X)` against `U[0, 1)`.
pub fn frac_uniformity(data: &SampleBatch, b: Base, bins: usize) -> Result<UniformityTest> {
    let (counts, excluded) = frac_histogram(data, b, bins)?;
    let probs = vec![1.0 / bins as f64; bins];
    let statistic = chi_square_statistic(&counts, &probs);
    let df = bins - 1;
    Ok(UniformityTest {
        n: counts.iter().sum::<u64>() as usize,
        excluded,
        bins,
        statistic,
        degrees_of_freedom: df,
        p_value: chi_square_sf(statistic, df as f64),
    })
}
