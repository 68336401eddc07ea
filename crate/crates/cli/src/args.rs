use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use benford_fourier_core::seeds::SeedKind;

#[derive(Debug, Parser)]
#[command(name = "benford-fourier", version, about = "Fourier-analytic Benford analysis of positive random variables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients, harmonics, deviation figures and the Benford verdict at one base.
    Analyze(AnalyzeArgs),
    /// Scan candidate bases c for membership in the Benford spectrum.
    Spectrum(SpectrumArgs),
    /// First-digit and significand statistics for a column of data.
    Digits(DigitsArgs),
    /// Draw a seeded sample, one value per line.
    Sample(SampleArgs),
    /// Check a built-in seed function and the uniformity of its wrapped density.
    SeedsValidate(SeedsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum DistName {
    /// `Y = log_b X` normal with --mu/--sigma.
    Normal,
    /// `X` lognormal: `ln X` normal with --mu/--sigma.
    Lognormal,
    /// `Y` Cauchy with --mu/--sigma.
    Cauchy,
    /// `Y` bilateral exponential (Laplace) with --mu/--sigma.
    #[value(aliases = ["laplace", "bilateral-exp"])]
    BilateralExp,
    /// `Y` uniform on [-a, a].
    #[value(alias = "uniform-sym")]
    UniformSym,
    /// `Y` uniform on [0, a].
    #[value(alias = "uniform-zero")]
    UniformZero,
    /// `Y` triangular on [-a, a].
    Triangular,
    /// `Y` with the Fejér-dual density of width --a.
    #[value(alias = "fejer-dual")]
    FejerDual,
    /// Whittaker's variable `X = b^Y`, Y Fejér dual, generated at base --b.
    Whittaker,
    /// `X` gamma with shape --alpha and scale --beta.
    Gamma,
    /// `Y` uniform on [-1/2, 1/2].
    Rect,
    /// `Y` triangular on [-1, 1].
    Tri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gauss,
    Cauchy,
    Laplace,
}

impl From<Family> for SeedKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Gauss => SeedKind::Gauss,
            Family::Cauchy => SeedKind::Cauchy,
            Family::Laplace => SeedKind::Laplace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Which random variable to study.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Named distribution.
    #[arg(long, value_enum, conflicts_with_all = ["spec", "family"])]
    pub dist: Option<DistName>,
    /// JSON file holding the density of `Y = log_b X` at --base.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    /// Seed-generated Benford family `Y = Z + U` at base --b (default --base).
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Location parameter.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Scale parameter.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Width for uniform, triangular and Fejér-dual densities.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Gamma shape.
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Gamma scale.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Generating base for Whittaker's variable and the seed families.
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default stdout). Written atomically.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Analysis base.
    #[arg(long, default_value_t = 10.0)]
    pub base: f64,
    /// Number of harmonics.
    #[arg(long, default_value_t = 32)]
    pub n_max: usize,
    /// Verdict threshold on the largest coefficient modulus.
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Points in the wrapped-density grid.
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Compare lattice and series densities on 101 points; fail (exit 4) beyond TOL.
    #[arg(long, value_name = "TOL")]
    pub lattice_check: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Base at which the model is defined (Whittaker: --b).
    #[arg(long)]
    pub base: Option<f64>,
    /// Lower end of the c-grid.
    #[arg(long, default_value_t = 1.01)]
    pub c_min: f64,
    /// Upper end of the c-grid (default base + 2).
    #[arg(long)]
    pub c_max: Option<f64>,
    /// Geometric grid points; integral roots of the base are added.
    #[arg(long, default_value_t = 512)]
    pub c_points: usize,
    #[arg(long, default_value_t = 32)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DigitsArgs {
    /// CSV file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Column index (from 0) or header name.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// Integer digit base.
    #[arg(long, default_value_t = 10.0)]
    pub base: f64,
    /// Grid points for the significand cdf distance.
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Bins for the fractional-part uniformity test.
    #[arg(long, default_value_t = 32)]
    pub bins: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Base for --spec and --family models.
    #[arg(long, default_value_t = 10.0)]
    pub base: f64,
    /// Number of draws.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default stdout). Written atomically.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeedsArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Points of the uniformity check on [0, 1).
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
