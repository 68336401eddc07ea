//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! Runs as a plain binary so the lines are always visible under `cargo test`.
//! The process fails if the set of failing criteria differs from
//! `KNOWN_FAILURES`.

use std::f64::consts::PI;
use std::time::Instant;

use benford_fourier_core::benford::{
    default_spectrum_grid, family_amplitude, geometric_grid, integral_roots, rho, spectrum_point, spectrum_scan,
    BenfordFamily, DEFAULT_EPSILON,
};
use benford_fourier_core::distributions::{affine, convolve, DistributionSpec, LogDensity};
use benford_fourier_core::sampling::{first_digit_table, sample};
use benford_fourier_core::seeds::{seed_coefficient, BuiltinSeed, SeedKind};
use benford_fourier_core::wrapped::{
    coefficients, coefficients_by_quadrature, lognormal_bound, r_function, wrapped_pdf_lattice, wrapped_pdf_series,
    DEFAULT_N_MAX,
};
use benford_fourier_core::{Base, ComplexValue};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Criterion 4 asks for `A_1 > 1e-6` at every midpoint between consecutive
/// roots. With σ = 0.4 the Gaussian damping `exp(-2π²σ²ρ²)` already sits
/// near 1e-8 at ρ ≈ 2.35, so every midpoint beyond the first one falls short.
const KNOWN_FAILURES: &[u32] = &[4];

struct Outcome {
    pass: bool,
    detail: String,
}

fn grid101() -> impl Iterator<Item = f64> {
    (0..101).map(|i| i as f64 / 101.0)
}

fn pinned_rng(seed: u64) -> impl FnMut() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn lognormal_figures() -> Outcome {
    let r = r_function(1.0);
    let bound = lognormal_bound(10f64.ln(), Base::TEN).unwrap();
    Outcome {
        pass: (r - 2.6753e-9).abs() <= 1e-13 && bound <= 5.3506e-9,
        detail: format!("R(1) = {r:.6e}, bound = {bound:.6e}"),
    }
}

fn poisson_summation() -> Outcome {
    let mut worst = 0.0f64;
    let mut names = Vec::new();
    let families = [
        ("normal", DistributionSpec::normal(0.3, 0.25).unwrap()),
        ("cauchy", DistributionSpec::cauchy(0.0, 0.5).unwrap()),
        ("bilateral_exp", DistributionSpec::bilateral_exp(0.2, 0.3).unwrap()),
        ("fejer_dual", DistributionSpec::fejer_dual(1.0).unwrap()),
    ];
    for (name, y) in &families {
        let cs = coefficients(y, DEFAULT_N_MAX).unwrap();
        for u in grid101() {
            let lattice = wrapped_pdf_lattice(y, u, 1e-10).unwrap();
            worst = worst.max((lattice - wrapped_pdf_series(&cs, u)).abs());
        }
        names.push(*name);
    }
    for alpha in [0.5, 2.0, 5.0] {
        let y = LogDensity::new(DistributionSpec::gamma(alpha, 1.0).unwrap(), Base::TEN).unwrap();
        let cs = coefficients_by_quadrature(&y, DEFAULT_N_MAX, 1e-11).unwrap();
        for u in grid101() {
            let lattice = wrapped_pdf_lattice(&y, u, 1e-11).unwrap();
            worst = worst.max((lattice - wrapped_pdf_series(&cs, u)).abs());
        }
    }
    names.push("log-gamma x3");
    Outcome { pass: worst <= 1e-8, detail: format!("max |lattice - series| = {worst:.2e} over {}", names.join(", ")) }
}

fn whittaker_spectrum() -> Outcome {
    let b = Base::new(7.0).unwrap();
    let y = DistributionSpec::fejer_dual(1.0).unwrap();
    let grid = default_spectrum_grid(b);
    let report = spectrum_scan(&y, b, &grid, DEFAULT_EPSILON, DEFAULT_N_MAX).unwrap();
    let inside: Vec<_> = report.points.iter().filter(|p| p.c <= 7.0).collect();
    let outside: Vec<_> = report.points.iter().filter(|p| p.c >= 7.05).collect();
    let bad = inside.iter().filter(|p| !p.member).count() + outside.iter().filter(|p| p.member).count();
    Outcome {
        pass: grid.len() == 512 && bad == 0,
        detail: format!("{} points with c <= 7, {} with c >= 7.05, {bad} misclassified", inside.len(), outside.len()),
    }
}

fn family_spectrum() -> Outcome {
    let b = Base::TEN;
    let family = BenfordFamily::new(SeedKind::Gauss, 0.0, 0.4).unwrap();
    let mut roots_zero = true;
    let mut max_at_roots = 0.0f64;
    for m in 1..=5u32 {
        let c = Base::new(10f64.powf(1.0 / m as f64)).unwrap();
        let r = rho(b, c);
        for n in 1..=DEFAULT_N_MAX as u32 {
            max_at_roots = max_at_roots.max(family_amplitude(&family, r, n).unwrap().0.abs());
        }
        let p = spectrum_point(&family.log_density(), b, c.value(), DEFAULT_EPSILON, DEFAULT_N_MAX).unwrap();
        roots_zero &= p.member && p.deviation <= 1e-12;
    }
    let mut midpoints = Vec::new();
    for m in 1..=4u32 {
        let c = 0.5 * (10f64.powf(1.0 / m as f64) + 10f64.powf(1.0 / (m + 1) as f64));
        let r = rho(b, Base::new(c).unwrap());
        midpoints.push(family_amplitude(&family, r, 1).unwrap().0.abs());
    }
    let mids_ok = midpoints.iter().all(|a| *a > 1e-6);
    let shown: Vec<_> = midpoints.iter().map(|a| format!("{a:.1e}")).collect();
    Outcome {
        pass: roots_zero && max_at_roots <= 1e-12 && mids_ok,
        detail: format!("max |A_n| at roots = {max_at_roots:.1e}; |A_1| at midpoints = [{}]", shown.join(", ")),
    }
}

fn seed_cross_derivation() -> Outcome {
    let family = BenfordFamily::new(SeedKind::Gauss, 0.3, 0.4).unwrap();
    let mut worst = 0.0f64;
    for r in [0.7, 1.3, 2.5] {
        for n in 1..=3u32 {
            let c = seed_coefficient(&family.seed(), r, n as i64).unwrap();
            let (a, _) = family_amplitude(&family, r, n).unwrap();
            worst = worst.max((2.0 * c.modulus() - a.abs()).abs());
        }
    }
    Outcome { pass: worst <= 1e-10, detail: format!("max gap = {worst:.2e}") }
}

fn random_family(next: &mut impl FnMut() -> f64) -> DistributionSpec {
    let mu = 2.0 * next() - 1.0;
    let sigma = 0.05 + 0.55 * next();
    match (next() * 4.0) as u32 {
        0 => DistributionSpec::normal(mu, sigma).unwrap(),
        1 => DistributionSpec::cauchy(mu, sigma).unwrap(),
        2 => DistributionSpec::bilateral_exp(mu, sigma).unwrap(),
        _ => BenfordFamily::new(SeedKind::Laplace, mu, sigma).unwrap().log_density(),
    }
}

fn proposition_suite() -> Outcome {
    let mut next = pinned_rng(20);
    let b = Base::TEN;
    let whittaker = DistributionSpec::fejer_dual(1.0).unwrap();
    let mut grid = geometric_grid(1.05, 14.0, 64).unwrap();
    grid.extend(integral_roots(b, 1.05, 14.0));
    let mut failures = Vec::new();
    for draw in 0..20 {
        let y = random_family(&mut next);
        // roots: the base b^{1/m} sees ĝ(mn)
        let eps = (1..=32).map(|n| y.transform(n as f64).modulus()).fold(0.0, f64::max);
        for m in 2..=5usize {
            let ym = affine(y.clone(), m as f64, 0.0).unwrap();
            for n in 1..=32 / m {
                let direct = y.transform((m * n) as f64);
                if (ym.transform(n as f64) - direct).modulus() > 1e-12 || direct.modulus() > eps {
                    failures.push(format!("roots#{draw}"));
                }
            }
        }
        // scale invariance
        let k = 0.01 + 99.0 * next();
        let scaled = affine(y.clone(), 1.0, k.log10()).unwrap();
        for n in 1..=32 {
            let (a, s) = (y.transform(n as f64), scaled.transform(n as f64));
            let rotated = a * ComplexValue::cis(-2.0 * PI * n as f64 * k.log10());
            if (a.modulus() - s.modulus()).abs() > 1e-12 || (rotated - s).modulus() > 1e-12 {
                failures.push(format!("scale#{draw}"));
            }
        }
        // products with a Benford factor
        let product = convolve(whittaker.clone(), y.clone());
        for n in 1..=32 {
            let xi = n as f64;
            let expect = whittaker.transform(xi) * y.transform(xi);
            if product.transform(xi).modulus() != 0.0 || (product.transform(xi) - expect).modulus() > 1e-15 {
                failures.push(format!("product#{draw}"));
            }
        }
        // spectra of factors are contained in the spectrum of the product
        let other = affine(whittaker.clone(), rho(b, Base::new(1.2 + 4.8 * next()).unwrap()), 0.0).unwrap();
        let both = convolve(y.clone(), other.clone());
        let sl = spectrum_scan(&y, b, &grid, DEFAULT_EPSILON, 32).unwrap();
        let so = spectrum_scan(&other, b, &grid, DEFAULT_EPSILON, 32).unwrap();
        let sp = spectrum_scan(&both, b, &grid, DEFAULT_EPSILON, 32).unwrap();
        for ((l, o), p) in sl.points.iter().zip(&so.points).zip(&sp.points) {
            if (l.member || o.member) && !p.member {
                failures.push(format!("union#{draw}"));
            }
        }
    }
    failures.dedup();
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() { "20 draws, 4 properties each".into() } else { failures.join(" ") },
    }
}

fn monte_carlo_digits() -> Outcome {
    // 99.9th percentile of chi-square with 8 degrees of freedom
    const CHI2_8_999: f64 = 26.124;
    let y = DistributionSpec::fejer_dual(1.0).unwrap();
    let batch = sample(&y, 100_000, 42).unwrap().exponentiate(Base::TEN);
    let report = first_digit_table(&batch, Base::TEN).unwrap();
    let p1 = report.observed[0];
    Outcome {
        pass: (p1 - 2f64.log10()).abs() <= 0.006 && report.chi_square < CHI2_8_999,
        detail: format!("P(D1 = 1) = {p1:.5}, chi-square = {:.2}", report.chi_square),
    }
}

/// Nodes and weights of `k`-point Gauss–Legendre on `[-1, 1]`.
fn gauss_legendre(k: usize) -> Vec<(f64, f64)> {
    (1..=k)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (k as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=k {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `∫ pdf(x) e^{-2πiξx} dx` over the listed panels by composite Gauss–Legendre.
fn oracle_transform(pdf: &dyn Fn(f64) -> f64, panels: &[(f64, f64, usize)], xi: f64, rule: &[(f64, f64)]) -> ComplexValue {
    let (mut re, mut im) = (0.0, 0.0);
    for &(lo, hi, pieces) in panels {
        let h = (hi - lo) / pieces as f64;
        for p in 0..pieces {
            let mid = lo + (p as f64 + 0.5) * h;
            for &(t, w) in rule {
                let x = mid + 0.5 * h * t;
                let f = pdf(x) * w * 0.5 * h;
                let phase = 2.0 * PI * xi * x;
                re += f * phase.cos();
                im -= f * phase.sin();
            }
        }
    }
    ComplexValue::new(re, im)
}

/// `∫_L^∞ cos(ωx)/x² dx`, asymptotically for `ω != 0`.
fn cos_over_square(w: f64, l: f64) -> f64 {
    if w == 0.0 {
        return 1.0 / l;
    }
    let w = w.abs();
    -(w * l).sin() / (w * l * l) - 2.0 * (w * l).cos() / (w * w * l * l * l)
}

/// Transform contribution of the part of a density beyond `|x - center| > L`.
#[derive(Clone, Copy)]
enum Tail {
    /// `k / (x - center)²`
    InverseSquare { k: f64, center: f64 },
    /// `(1 - cos 2πax) / (2π²a x²)`
    Fejer { a: f64 },
}

impl Tail {
    fn transform(self, l: f64, xi: f64) -> ComplexValue {
        let w = 2.0 * PI * xi;
        match self {
            Tail::InverseSquare { k, center } => ComplexValue::cis(-w * center).scale(2.0 * k * cos_over_square(w, l)),
            Tail::Fejer { a } => {
                let k = 1.0 / (2.0 * PI * PI * a);
                let v = 2.0 * PI * a;
                let j = cos_over_square(w, l) - 0.5 * cos_over_square(w + v, l) - 0.5 * cos_over_square(w - v, l);
                ComplexValue::real(2.0 * k * j)
            }
        }
    }
}

fn graded(lo: f64, hi: f64, pieces: usize) -> Vec<(f64, f64, usize)> {
    // geometric refinement towards lo for densities with a root singularity there
    let mut out = Vec::new();
    let mut a = lo;
    let mut width = (hi - lo) * 1e-20;
    while width < 0.01 {
        out.push((a, a + width, 1));
        a += width;
        width *= 2.0;
    }
    out.push((a, hi, pieces));
    out
}

/// `(lo, hi, panels)` pieces covering a density's support.
type Panels = Vec<(f64, f64, usize)>;

fn transform_oracle() -> Outcome {
    let rule = gauss_legendre(20);
    let big = 1.0e4;
    let tail_pieces = 80_000;
    let mut worst = 0.0f64;
    let mut worst_name = "";
    let cases: Vec<(&str, DistributionSpec, Panels, Option<Tail>)> = vec![
        ("normal", DistributionSpec::normal(0.3, 0.7).unwrap(), vec![(0.3 - 12.0 * 0.7, 0.3 + 12.0 * 0.7, 400)], None),
        ("uniform_sym", DistributionSpec::uniform_sym(0.8).unwrap(), vec![(-0.8, 0.8, 100)], None),
        ("uniform_zero", DistributionSpec::uniform_zero(1.5).unwrap(), vec![(0.0, 1.5, 100)], None),
        ("triangular", DistributionSpec::triangular(0.6).unwrap(), vec![(-0.6, 0.0, 100), (0.0, 0.6, 100)], None),
        ("rect", DistributionSpec::Rect, vec![(-0.5, 0.5, 100)], None),
        ("tri", DistributionSpec::Tri, vec![(-1.0, 0.0, 100), (0.0, 1.0, 100)], None),
        (
            "bilateral_exp",
            DistributionSpec::bilateral_exp(0.2, 0.3).unwrap(),
            vec![(0.2 - 40.0 * 0.3, 0.2, 800), (0.2, 0.2 + 40.0 * 0.3, 800)],
            None,
        ),
        ("gamma", DistributionSpec::gamma(2.5, 0.8).unwrap(), graded(0.0, 80.0, 1600), None),
        ("gamma_small_shape", DistributionSpec::gamma(0.6, 1.2).unwrap(), graded(0.0, 120.0, 2400), None),
        (
            "cauchy",
            DistributionSpec::cauchy(-0.2, 0.4).unwrap(),
            vec![(-0.2 - big, -0.2 + big, tail_pieces)],
            Some(Tail::InverseSquare { k: 0.4 / PI, center: -0.2 }),
        ),
        ("fejer_dual", DistributionSpec::fejer_dual(1.0).unwrap(), vec![(-big, big, tail_pieces)], Some(Tail::Fejer { a: 1.0 })),
        (
            "fejer_dual_a2",
            DistributionSpec::fejer_dual(2.0).unwrap(),
            vec![(-big, big, tail_pieces)],
            Some(Tail::Fejer { a: 2.0 }),
        ),
    ];
    for (name, spec, panels, tail) in &cases {
        let pdf = |x: f64| spec.pdf(x);
        for xi in [0.3, 1.0, 2.5] {
            let mut oracle = oracle_transform(&pdf, panels, xi, &rule);
            if let Some(tail) = tail {
                oracle = oracle + tail.transform(big, xi);
            }
            let gap = (oracle - spec.transform(xi)).modulus();
            if gap > worst {
                worst = gap;
                worst_name = name;
            }
        }
    }
    Outcome { pass: worst <= 1e-8, detail: format!("{} entries, worst gap {worst:.2e} ({worst_name})", cases.len()) }
}

fn seed_uniformity() -> Outcome {
    let mut next = pinned_rng(9);
    let mut worst = 0.0f64;
    for kind in SeedKind::ALL {
        for _ in 0..10 {
            let mu = 4.0 * next() - 2.0;
            let sigma = 0.05 + 1.95 * next();
            let y = DistributionSpec::SeedDerived { seed: BuiltinSeed::new(kind, mu, sigma).unwrap() };
            for u in grid101() {
                worst = worst.max((wrapped_pdf_lattice(&y, u, 1e-10).unwrap() - 1.0).abs());
            }
        }
    }
    Outcome { pass: worst <= 1e-8, detail: format!("30 seeds, max |wrapped - 1| = {worst:.2e}") }
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(u32, &str, f64, Check); 9] = [
        (1, "lognormal bound", 1.0, lognormal_figures),
        (2, "Poisson summation", 30.0, poisson_summation),
        (3, "Whittaker spectrum", 10.0, whittaker_spectrum),
        (4, "family spectrum structure", 5.0, family_spectrum),
        (5, "seed coefficient cross-derivation", 1.0, seed_cross_derivation),
        (6, "proposition suite", 30.0, proposition_suite),
        (7, "Monte Carlo first-digit law", 20.0, monte_carlo_digits),
        (8, "transform oracle", 60.0, transform_oracle),
        (9, "seed-function uniformity", 10.0, seed_uniformity),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let pass = outcome.pass && secs < limit;
        println!(
            "criterion {id} [{name}]: {} ({}; {secs:.2}s of {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
        if !pass {
            failed.push(id);
        }
    }
    let unexpected: Vec<_> = failed.iter().filter(|id| !KNOWN_FAILURES.contains(id)).collect();
    let recovered: Vec<_> = KNOWN_FAILURES.iter().filter(|id| !failed.contains(id)).collect();
    println!("acceptance: {} of 9 passed; known failures {KNOWN_FAILURES:?}", 9 - failed.len());
    if !unexpected.is_empty() || !recovered.is_empty() {
        eprintln!("unexpected failures {unexpected:?}; known failures now passing {recovered:?}");
        std::process::exit(1);
    }
}
