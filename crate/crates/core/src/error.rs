use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("expected a finite value, got {0}")]
    NonFinite(f64),
    #[error("expected a positive value, got {0}")]
    NonPositive(f64),
    #[error("base must be greater than 1, got {0}")]
    InvalidBase(f64),
    #[error("digit extraction needs an integer base >= 2, got {0}")]
    NonIntegerBase(f64),
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("tolerance {requested:e} is unreachable for this density; best achievable is about {achievable:e}")]
    ToleranceUnreachable { requested: f64, achievable: f64 },
    #[error("seed function has no closed-form transform of h; integrate the seed density numerically instead")]
    MissingTransform,
    #[error("no sampler for {0}")]
    NoSampler(String),
    #[error("no usable data: {0}")]
    EmptyData(&'static str),
}
