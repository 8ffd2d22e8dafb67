//! Weibull fitting, Anderson–Darling goodness of fit, QQ data, and the
//! maximum-likelihood fit of the gamma mixing parameter `a`.
//!
//! Estimation is two-stage: the Weibull baseline is fitted first and then
//! frozen while `a` is fitted.

mod goodness;
mod mixing_fit;
mod sample;
mod simulate;
mod weibull_fit;

use thiserror::Error;

use crate::distributions::DistributionError;
use crate::mixture::MixtureError;
use crate::numerics::NumericsError;

pub use goodness::{
    anderson_darling_statistic, anderson_darling_weibull, qq_data, ADResult, BootstrapNull, BootstrapOptions,
};
pub use mixing_fit::{fit_frailty_a, fit_resilience_a, mixture_loglik, AFit, A_BRACKET};
pub use sample::Sample;
pub use simulate::{simulate_frailty, simulate_resilience, simulate_weibull};
pub use weibull_fit::{weibull_loglik, weibull_mle, FitResult, Interval, CHI2_1_95};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InferenceError {
    #[error("empty sample")]
    Empty,
    #[error("observation {index} is {value}; lifetimes must be positive and finite")]
    NonPositive { index: usize, value: f64 },
    #[error("line {line}: cannot parse '{content}' as a number")]
    Parse { line: usize, content: String },
    #[error("need at least {needed} observations, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("all observations are equal")]
    Degenerate,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Mixture(#[from] MixtureError),
}
