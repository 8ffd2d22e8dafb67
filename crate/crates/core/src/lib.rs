//! Frailty and resilience mixture models, ageing classes, and shifted
//! stochastic orders, checked numerically on grids.
//!
//! The numerical core (`numerics` through `orders`) is generic over
//! [`Real`] (`f32` or `f64`); fitting, reproduction and spec parsing work
//! in `f64`. The aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail these comparisons.

pub mod ageing;
pub mod config;
pub mod distributions;
pub mod inference;
pub mod mixture;
pub mod monotone;
pub mod numerics;
pub mod orders;
pub mod real;
pub mod reproduce;

pub use ageing::{classify, classify_all, AgeingClass};
pub use distributions::{DistributionError, Lifetime, SupportPredicate};
pub use mixture::{MixtureError, MixtureKind};
pub use monotone::{CheckError, Direction, MonotonicityReport, Verdict, Witness};
pub use orders::{check_consequence, check_order, verify_theorem, OrderRelation, TheoremOutcome, TheoremSpec, THEOREMS};
pub use real::Real;

pub type Weibull = distributions::Weibull<f64>;
pub type WeibullParams = distributions::WeibullParams<f64>;
pub type ReflectedWeibull = distributions::ReflectedWeibull<f64>;
pub type UniformLifetime = distributions::UniformLifetime<f64>;
pub type PdfDistribution = distributions::PdfDistribution<f64>;
pub type MixingDistribution = distributions::MixingDistribution<f64>;
pub type GammaParams = distributions::GammaParams<f64>;
pub type MixtureModel = mixture::MixtureModel<f64>;
pub type GammaClosedForm = mixture::GammaClosedForm<f64>;
pub type GridSpec = monotone::GridSpec<f64>;
/// Shared handle to any `f64` lifetime law.
pub type DynLifetime = std::sync::Arc<dyn Lifetime<f64>>;
