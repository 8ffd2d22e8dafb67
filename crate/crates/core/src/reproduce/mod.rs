//! Reproduction runs: the two data scenarios and the built-in example
//! instances, with their ratio curves as [`CurveDump`]s.

mod curves;
mod examples;
mod scenarios;

use thiserror::Error;

use crate::inference::InferenceError;
use crate::monotone::CheckError;

pub use curves::{CurveDump, CurveParseError};
pub use examples::{example_grid, reproduce_examples, ExampleCase, ExamplesReport};
pub use scenarios::{
    scenario1, scenario2, CurveCheck, NamedCheck, ScenarioOptions, ScenarioReport,
};

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Mixture(#[from] crate::mixture::MixtureError),
    #[error(transparent)]
    Distribution(#[from] crate::distributions::DistributionError),
}
