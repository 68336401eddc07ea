//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature.
//!
//! Infinite ends are mapped onto finite intervals with `x = a + t/(1 - t)`.
//! Interior breakpoints (kinks, support edges) seed the initial partition.

// node tables are tabulated to more digits than f64 holds
#![allow(clippy::excessive_precision)]

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)] // inherent float methods take over when std is linked
use num_traits::Float;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub converged: bool,
}

/// Adaptive integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    /// `x = origin + t / (1 - t)` for `t` in `[0, 1)`
    Right(f64),
    /// `x = origin - t / (1 - t)` for `t` in `[0, 1)`
    Left(f64),
}

impl Map {
    #[inline]
    fn apply<F: Fn(f64) -> f64>(self, f: &F, t: f64) -> f64 {
        match self {
            Map::Identity => f(t),
            Map::Right(a) => {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            }
            Map::Left(b) => {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    map: Map,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, map: Map, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = map.apply(f, center);
    let mut kronrod = fc * WGK[10];
    let mut abs_sum = fc.abs() * WGK[10];
    let mut gauss = 0.0;
    let mut values = [(0.0f64, 0.0f64); 10];
    for (j, (&x, &w)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let f1 = map.apply(f, center - dx);
        let f2 = map.apply(f, center + dx);
        values[j] = (f1, f2);
        kronrod += w * (f1 + f2);
        abs_sum += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for (j, &(f1, f2)) in values.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let result = kronrod * half;
    let asc = asc * half.abs();
    let abs_sum = abs_sum * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_sum);
    }
    if !result.is_finite() {
        err = f64::INFINITY;
    }
    (result, err)
}

impl Quadrature {
    pub fn with_tolerance(abs_tol: f64) -> Self {
        Self { abs_tol, ..Self::default() }
    }

    /// `∫_a^b f(x) dx`; either end may be infinite.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Integral {
        self.integrate_with_breaks(f, a, b, &[])
    }

    /// Like [`Quadrature::integrate`], with the initial partition split at
    /// every breakpoint strictly inside `(a, b)`.
    pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        breaks: &[f64],
    ) -> Integral {
        if a == b {
            return Integral { value: 0.0, abs_error: 0.0, converged: true };
        }
        if a > b {
            let r = self.integrate_with_breaks(f, b, a, breaks);
            return Integral { value: -r.value, ..r };
        }
        let mut points: Vec<f64> = breaks
            .iter()
            .copied()
            .filter(|&x| x.is_finite() && x > a && x < b)
            .collect();
        if points.is_empty() && a.is_infinite() && b.is_infinite() {
            points.push(0.0);
        }
        points.sort_by(f64::total_cmp);
        points.dedup();

        let mut edges = Vec::with_capacity(points.len() + 2);
        edges.push(a);
        edges.extend(points);
        edges.push(b);

        let mut heap = BinaryHeap::new();
        for w in edges.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (map, tlo, thi) = match (lo.is_infinite(), hi.is_infinite()) {
                (false, false) => (Map::Identity, lo, hi),
                (false, true) => (Map::Right(lo), 0.0, 1.0),
                (true, false) => (Map::Left(hi), 0.0, 1.0),
                (true, true) => unreachable!("split at a finite point above"),
            };
            let (value, error) = gauss_kronrod(&f, map, tlo, thi);
            heap.push(Segment { lo: tlo, hi: thi, map, value, error });
        }
        self.refine(&f, heap)
    }

    fn refine<F: Fn(f64) -> f64>(&self, f: &F, mut heap: BinaryHeap<Segment>) -> Integral {
        let mut settled_value = 0.0;
        let mut settled_error = 0.0;
        let mut count = heap.len();
        loop {
            let (value, error) = heap
                .iter()
                .fold((settled_value, settled_error), |(v, e), s| (v + s.value, e + s.error));
            let tol = self.abs_tol.max(self.rel_tol * value.abs());
            if error <= tol {
                return Integral { value, abs_error: error, converged: true };
            }
            if count >= self.max_intervals {
                return Integral { value, abs_error: error, converged: false };
            }
            let Some(worst) = heap.pop() else {
                return Integral { value, abs_error: error, converged: false };
            };
            let mid = 0.5 * (worst.lo + worst.hi);
            if !(mid > worst.lo && mid < worst.hi) || (worst.hi - worst.lo) < 1e-14 * mid.abs().max(1e-300) {
                // cannot split further in floating point
                settled_value += worst.value;
                settled_error += worst.error;
                if heap.is_empty() {
                    return Integral {
                        value: settled_value,
                        abs_error: settled_error,
                        converged: settled_error <= tol,
                    };
                }
                continue;
            }
            let (v1, e1) = gauss_kronrod(f, worst.map, worst.lo, mid);
            let (v2, e2) = gauss_kronrod(f, worst.map, mid, worst.hi);
            heap.push(Segment { lo: worst.lo, hi: mid, map: worst.map, value: v1, error: e1 });
            heap.push(Segment { lo: mid, hi: worst.hi, map: worst.map, value: v2, error: e2 });
            count += 1;
        }
    }
}
