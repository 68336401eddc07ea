use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use benford_fourier_core::benford::{
    geometric_grid, integral_roots, spectrum_point, spectrum_scan, BenfordOptions, BenfordReport, SpectrumReport,
};
use benford_fourier_core::distributions::{Density, DistributionSpec};
use benford_fourier_core::sampling::{
    first_digit_table, frac_uniformity, significand_cdf_distance, DigitLawReport, SampleBatch, UniformityTest,
};
use benford_fourier_core::seeds::{default_validation_grid, validate_seed, BuiltinSeed, SeedValidation};
use benford_fourier_core::wrapped::{
    coefficients, coefficients_by_quadrature, series_grid, wrapped_pdf_lattice, wrapped_pdf_series,
};
use benford_fourier_core::Base;

use crate::args::{AnalyzeArgs, DigitsArgs, Format, OutputArgs, SampleArgs, SeedsArgs, SpectrumArgs};
use crate::error::{CliError, CliResult};
use crate::io::{read_column, sibling, write_output};
use crate::model::{base, Model};

/// Quadrature tolerance for densities without a closed-form transform.
const QUADRATURE_TOL: f64 = 1e-11;
/// Seed-derived densities must wrap to 1 within this.
const SEED_UNIFORMITY_TOL: f64 = 1e-8;
/// Digit and uniformity tests flag data below this p-value.
const SIGNIFICANCE: f64 = 0.001;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn format_of(out: &OutputArgs, default: Format) -> Format {
    out.format.unwrap_or(default)
}

/// Writes the main artifact, plus a CSV companion next to it when the main
/// artifact is a JSON file.
fn emit(out: &OutputArgs, json: String, csv: String, tag: &str, default: Format) -> CliResult<()> {
    let path = out.out.as_deref();
    match format_of(out, default) {
        Format::Csv => write_output(path, csv.as_bytes()),
        Format::Json => {
            if let Some(p) = path {
                write_output(Some(&sibling(p, tag)), csv.as_bytes())?;
            }
            write_output(path, json.as_bytes())
        }
    }
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<()> {
    let model = Model::from_args(&args.model)?;
    let b = base(args.base, "base")?;
    let opts = BenfordOptions { epsilon: args.epsilon, n_max: args.n_max, grid: args.grid };
    let closed = model.log_density(b)?;
    let numeric = model.numeric_log_density(b);
    let (density, cs): (&dyn Density, _) = match (&closed, &numeric) {
        (Some(y), _) => (y, coefficients(y, args.n_max)?),
        (None, Some(y)) => (y, coefficients_by_quadrature(y, args.n_max, QUADRATURE_TOL)?),
        (None, None) => return Err(CliError::usage("model has no density at this base")),
    };
    let report = BenfordReport::from_coefficients(&cs, b, &opts)?;

    if let Some(tol) = args.lattice_check {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::usage("--lattice-check needs a positive tolerance"));
        }
        let mut worst = 0.0f64;
        for i in 0..101 {
            let u = i as f64 / 101.0;
            let lattice = wrapped_pdf_lattice(density, u, tol * 0.1)?;
            worst = worst.max((lattice - wrapped_pdf_series(&cs, u)).abs());
        }
        if worst > tol {
            return Err(CliError::Numerical(format!(
                "lattice and series densities differ by {worst:e}, above --lattice-check {tol:e}"
            )));
        }
        eprintln!("lattice check: max |lattice - series| = {worst:e} (tolerance {tol:e})");
    }

    let mut csv = String::from("u,pdf\n");
    for (u, pdf) in series_grid(&cs, args.grid) {
        let _ = writeln!(csv, "{u},{pdf:e}");
    }
    emit(&args.output, to_json(&report), csv, "grid", Format::Json)
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("BENFORD_FOURIER_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::usage(format!("BENFORD_FOURIER_THREADS must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::usage(format!("cannot start worker threads: {e}")))
}

pub fn spectrum(args: &SpectrumArgs) -> CliResult<()> {
    let model = Model::from_args(&args.model)?;
    let requested = args.base.map(|v| base(v, "base")).transpose()?;
    let b = model.home_base(requested);
    let y: DistributionSpec = model
        .log_density(b)?
        .ok_or_else(|| CliError::usage("spectrum needs a closed-form transform; use analyze for gamma"))?;
    let c_max = args.c_max.unwrap_or(b.value() + 2.0);
    if args.c_min <= 1.0 || c_max <= 1.0 {
        return Err(CliError::usage("spectrum grid bounds must exceed 1"));
    }
    let mut grid = geometric_grid(args.c_min, c_max, args.c_points)?;
    grid.extend(integral_roots(b, args.c_min, c_max));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    // validates the model and thresholds once, before fanning out
    spectrum_scan(&y, b, &[], args.epsilon, args.n_max)?;
    let points = thread_pool()?.install(|| {
        grid.par_iter()
            .map(|&c| spectrum_point(&y, b, c, args.epsilon, args.n_max))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let report = SpectrumReport { base: b, epsilon: args.epsilon, n_max: args.n_max, points };
    let mut csv = String::from("c,deviation,member\n");
    for p in &report.points {
        let _ = writeln!(csv, "{},{:e},{}", p.c, p.deviation, p.member);
    }
    eprintln!(
        "spectrum: {} of {} bases within epsilon, {} with identically zero coefficients",
        report.members().count(),
        report.points.len(),
        report.exact_members().count()
    );
    let json = to_json(&report);
    match format_of(&args.output, Format::Csv) {
        Format::Csv => write_output(args.output.out.as_deref(), csv.as_bytes()),
        Format::Json => write_output(args.output.out.as_deref(), json.as_bytes()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigitsReport {
    pub digits: DigitLawReport,
    /// `max_s |Pr(S <= s) - log_b s|` over the significand grid.
    pub significand_distance: f64,
    pub uniformity: UniformityTest,
    /// Neither the digit test nor the uniformity test rejects at the 0.1% level.
    pub consistent_with_benford: bool,
}

pub fn digits(args: &DigitsArgs) -> CliResult<()> {
    let b = base(args.base, "base")?;
    if b.radix().is_none() {
        return Err(CliError::usage(format!("digits needs an integer --base >= 2, got {}", args.base)));
    }
    let data = read_column(&args.input, &args.column)?;
    let batch = SampleBatch { values: data.log10, ..SampleBatch::external(Vec::new()) }.exponentiate(Base::TEN);
    let mut digits = first_digit_table(&batch, b)?;
    digits.excluded += data.excluded;
    let significand_distance = significand_cdf_distance(&batch, b, args.grid)?;
    let mut uniformity = frac_uniformity(&batch, b, args.bins)?;
    uniformity.excluded += data.excluded;
    if data.excluded > 0 {
        eprintln!("digits: excluded {} zero, negative or blank values", data.excluded);
    }
    let report = DigitsReport {
        consistent_with_benford: digits.p_value >= SIGNIFICANCE && uniformity.p_value >= SIGNIFICANCE,
        digits,
        significand_distance,
        uniformity,
    };
    let mut csv = String::from("digit,count,observed,expected\n");
    let d = &report.digits;
    for (i, digit) in d.digits().enumerate() {
        let _ = writeln!(csv, "{digit},{},{},{}", d.counts[i], d.observed[i], d.expected[i]);
    }
    emit(&args.output, to_json(&report), csv, "digits", Format::Json)
}

pub fn sample(args: &SampleArgs) -> CliResult<()> {
    let model = Model::from_args(&args.model)?;
    let b = base(args.base, "base")?;
    let lines = model.sample_lines(args.n, args.seed, b)?;
    let mut text = lines.join("\n");
    text.push('\n');
    write_output(args.out.as_deref(), text.as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedReport {
    pub seed: BuiltinSeed,
    pub validation: SeedValidation,
    /// `max_u |wrapped density - 1|` over the check grid.
    pub uniformity_deviation: f64,
    pub grid: usize,
}

pub fn seeds_validate(args: &SeedsArgs) -> CliResult<()> {
    let seed = BuiltinSeed::new(args.family.into(), args.mu, args.sigma)?;
    if args.grid == 0 {
        return Err(CliError::usage("--grid must be at least 1"));
    }
    let validation = validate_seed(&seed, &default_validation_grid());
    let y = DistributionSpec::SeedDerived { seed };
    let mut worst = 0.0f64;
    for i in 0..args.grid {
        let u = i as f64 / args.grid as f64;
        worst = worst.max((wrapped_pdf_lattice(&y, u, 1e-10)? - 1.0).abs());
    }
    if !validation.valid {
        return Err(CliError::Numerical(format!("seed violates {} conditions", validation.violations.len())));
    }
    if worst > SEED_UNIFORMITY_TOL {
        return Err(CliError::Numerical(format!("wrapped seed density deviates from 1 by {worst:e}")));
    }
    let report = SeedReport { seed, validation, uniformity_deviation: worst, grid: args.grid };
    write_output(args.output.out.as_deref(), to_json(&report).as_bytes())
}
