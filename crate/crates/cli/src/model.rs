//! Turns command-line flags into the random variable under study.

use std::fs;

use benford_fourier_core::benford::{rho, whittaker_log_density, BenfordFamily};
use benford_fourier_core::distributions::{affine, DistributionSpec, LogDensity};
use benford_fourier_core::sampling::sample;
use benford_fourier_core::Base;

use crate::args::{DistName, ModelArgs};
use crate::error::{CliError, CliResult};
use crate::io::format_from_log10;

#[derive(Debug, Clone)]
pub enum Model {
    /// Density of `Y = log_b X`, taken at whatever base the command uses.
    Log(DistributionSpec),
    /// `ln X ~ Normal(mu, sigma)`.
    Lognormal { mu: f64, sigma: f64 },
    /// `X = b^Y` with `Y` the Fejér dual of width 1.
    Whittaker { b: Base },
    /// `X = g^{Z + U}`; `g` defaults to the command's base.
    Family { family: BenfordFamily, generating: Option<Base> },
    /// `X ~ Gamma(alpha, scale beta)`.
    Gamma { alpha: f64, beta: f64 },
}

pub fn base(value: f64, flag: &str) -> CliResult<Base> {
    Base::new(value).map_err(|e| CliError::usage(format!("--{flag}: {e}")))
}

impl Model {
    pub fn from_args(args: &ModelArgs) -> CliResult<Self> {
        let generating = args.b.map(|b| base(b, "b")).transpose()?;
        if let Some(family) = args.family {
            let family = BenfordFamily::new(family.into(), args.mu, args.sigma)?;
            return Ok(Model::Family { family, generating });
        }
        if let Some(path) = &args.spec {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let spec: DistributionSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: not a distribution spec: {e}", path.display())))?;
            spec.validate()?;
            return Ok(Model::Log(spec));
        }
        let Some(dist) = args.dist else {
            return Err(CliError::usage("one of --dist, --spec or --family is required"));
        };
        let (mu, sigma, a) = (args.mu, args.sigma, args.a);
        let spec = match dist {
            DistName::Lognormal => {
                DistributionSpec::normal(mu, sigma)?;
                return Ok(Model::Lognormal { mu, sigma });
            }
            DistName::Whittaker => {
                let b = generating.ok_or_else(|| CliError::usage("--dist whittaker needs --b"))?;
                return Ok(Model::Whittaker { b });
            }
            DistName::Gamma => {
                DistributionSpec::gamma(args.alpha, args.beta)?;
                return Ok(Model::Gamma { alpha: args.alpha, beta: args.beta });
            }
            DistName::Normal => DistributionSpec::normal(mu, sigma)?,
            DistName::Cauchy => DistributionSpec::cauchy(mu, sigma)?,
            DistName::BilateralExp => DistributionSpec::bilateral_exp(mu, sigma)?,
            DistName::UniformSym => DistributionSpec::uniform_sym(a)?,
            DistName::UniformZero => DistributionSpec::uniform_zero(a)?,
            DistName::Triangular => DistributionSpec::triangular(a)?,
            DistName::FejerDual => DistributionSpec::fejer_dual(a)?,
            DistName::Rect => DistributionSpec::Rect,
            DistName::Tri => DistributionSpec::Tri,
        };
        Ok(Model::Log(spec))
    }

    /// The base the model is built around when the user gives none.
    pub fn home_base(&self, requested: Option<Base>) -> Base {
        match (self, requested) {
            (_, Some(b)) => b,
            (Model::Whittaker { b }, None) => *b,
            (Model::Family { generating: Some(g), .. }, None) => *g,
            _ => Base::TEN,
        }
    }

    /// Closed-form density of `log_base X`, or `None` when only a
    /// numerical route exists.
    pub fn log_density(&self, base: Base) -> CliResult<Option<DistributionSpec>> {
        Ok(Some(match self {
            Model::Log(spec) => spec.clone(),
            Model::Lognormal { mu, sigma } => DistributionSpec::log_of_lognormal(*mu, *sigma, base)?,
            Model::Whittaker { b } => whittaker_log_density(*b, base),
            Model::Family { family, generating } => {
                let y = family.log_density();
                match generating {
                    Some(g) if *g != base => affine(y, rho(*g, base), 0.0)?,
                    _ => y,
                }
            }
            Model::Gamma { .. } => return Ok(None),
        }))
    }

    /// Density of `log_base X` through the positive variable, for models
    /// without a closed-form transform.
    pub fn numeric_log_density(&self, base: Base) -> Option<LogDensity> {
        match self {
            Model::Gamma { alpha, beta } => {
                LogDensity::new(DistributionSpec::Gamma { alpha: *alpha, beta: *beta }, base).ok()
            }
            _ => None,
        }
    }

    /// `n` seeded draws rendered one per line. Models of a positive variable
    /// emit `X`; plain densities emit their own draws.
    pub fn sample_lines(&self, n: usize, seed: u64, base: Base) -> CliResult<Vec<String>> {
        let exponents = |spec: DistributionSpec, log10_of_base: f64| -> CliResult<Vec<String>> {
            let batch = sample(&spec, n, seed)?;
            Ok(batch.values.iter().map(|y| format_from_log10(y * log10_of_base)).collect())
        };
        match self {
            Model::Log(spec) => Ok(sample(spec, n, seed)?.values.iter().map(|v| format!("{v:e}")).collect()),
            Model::Gamma { alpha, beta } => {
                let spec = DistributionSpec::gamma(*alpha, *beta)?;
                Ok(sample(&spec, n, seed)?.values.iter().map(|v| format!("{v:e}")).collect())
            }
            Model::Lognormal { mu, sigma } => {
                exponents(DistributionSpec::normal(*mu, *sigma)?, std::f64::consts::LOG10_E)
            }
            Model::Whittaker { b } => exponents(DistributionSpec::fejer_dual(1.0)?, b.value().log10()),
            Model::Family { family, generating } => {
                let g = generating.unwrap_or(base);
                exponents(family.log_density(), g.value().log10())
            }
        }
    }
}
