//! Special functions, quadrature, differentiation and 1-D minimization.

pub mod optimize;
pub mod quadrature;
pub mod special;

use thiserror::Error;

pub use optimize::{bisect, default_step, minimize_1d, numeric_derivative, OptimConfig};
pub use quadrature::{integrate, integrate_detailed, integrate_pieces, Estimate, QuadratureConfig};
pub use special::{
    ln_gamma, ln_regularized_pair, ln_upper_incomplete_gamma, regularized_lower_incomplete_gamma,
    regularized_upper_incomplete_gamma, upper_incomplete_gamma,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },
    #[error("{routine} did not converge after {iterations} iterations")]
    NonConvergence {
        routine: &'static str,
        iterations: usize,
    },
    #[error("{routine}: non-finite value at {at}")]
    NonFinite { routine: &'static str, at: f64 },
}
