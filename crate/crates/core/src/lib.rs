//! Fourier-analytic Benford analysis of positive random variables.
//!
//! For a positive random variable `X` and a base `b > 1`, the distribution of
//! `⟨log_b X⟩` (the fractional part) is described by the Fourier coefficients
//! `c_n = ĝ(n)` of the density `g` of `Y = log_b X`. `X` is `b`-Benford exactly
//! when every `c_n` with `n ≠ 0` vanishes. This crate evaluates those
//! coefficients from closed-form transforms, wraps densities onto `[0, 1)` by
//! direct lattice summation, scans Benford spectra across bases, and builds
//! Benford variables from seed functions.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x < y)` is the idiom for rejecting NaN along with the failing range
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod benford;
pub mod distributions;
mod error;
pub mod numerics;
pub mod quad;
pub mod sampling;
pub mod seeds;
pub mod special;
pub mod wrapped;

pub use error::{Error, Result};
pub use numerics::{Base, ComplexValue};
