//! Ageing classes checked as ratio monotonicity on a grid.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::Lifetime;
use crate::monotone::{scan, CheckError, Direction, GridSpec, MonotonicityReport, Profile};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AgeingClass {
    Ilr,
    Dlr,
    Ifr,
    Dfr,
    Drfr,
    Irfr,
    Imrl,
    Dmrl,
    Imit,
}

impl AgeingClass {
    pub const ALL: [AgeingClass; 9] = [
        AgeingClass::Ilr,
        AgeingClass::Dlr,
        AgeingClass::Ifr,
        AgeingClass::Dfr,
        AgeingClass::Drfr,
        AgeingClass::Irfr,
        AgeingClass::Imrl,
        AgeingClass::Dmrl,
        AgeingClass::Imit,
    ];

    /// The function `φ` and the direction in which `φ(x+t)/φ(x)` must move.
    pub(crate) fn definition(self) -> (Profile, Direction) {
        use Direction::*;
        match self {
            AgeingClass::Ilr => (Profile::Pdf, Decreasing),
            AgeingClass::Dlr => (Profile::Pdf, Increasing),
            AgeingClass::Ifr => (Profile::Sf, Decreasing),
            AgeingClass::Dfr => (Profile::Sf, Increasing),
            AgeingClass::Drfr => (Profile::Cdf, Decreasing),
            AgeingClass::Irfr => (Profile::Cdf, Increasing),
            AgeingClass::Imrl => (Profile::TailIntegral, Increasing),
            AgeingClass::Dmrl => (Profile::TailIntegral, Decreasing),
            AgeingClass::Imit => (Profile::HeadIntegral, Decreasing),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AgeingClass::Ilr => "ILR",
            AgeingClass::Dlr => "DLR",
            AgeingClass::Ifr => "IFR",
            AgeingClass::Dfr => "DFR",
            AgeingClass::Drfr => "DRFR",
            AgeingClass::Irfr => "IRFR",
            AgeingClass::Imrl => "IMRL",
            AgeingClass::Dmrl => "DMRL",
            AgeingClass::Imit => "IMIT",
        }
    }
}

impl fmt::Display for AgeingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgeingClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgeingClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown ageing class '{s}'"))
    }
}

/// Checks the class's defining ratio on every adjacent grid pair for every shift.
pub fn classify<T: Real>(
    dist: &dyn Lifetime<T>,
    cls: AgeingClass,
    grid: &GridSpec<T>,
) -> Result<MonotonicityReport, CheckError> {
    grid.validate()?;
    let (profile, direction) = cls.definition();
    let xs = grid.xs();
    let base = profile.ln_series(dist, &xs, T::zero());
    let rows: Vec<Vec<T>> = grid
        .t_values
        .iter()
        .map(|&t| {
            let shifted = profile.ln_series(dist, &xs, t);
            shifted.iter().zip(&base).map(|(a, b)| *a - *b).collect()
        })
        .collect();
    scan(cls.name().to_string(), &xs, &grid.t_values, &rows, direction, grid.slack)
}

/// Runs [`classify`] for every class.
pub fn classify_all<T: Real>(
    dist: &dyn Lifetime<T>,
    grid: &GridSpec<T>,
) -> Result<BTreeMap<AgeingClass, MonotonicityReport>, CheckError> {
    AgeingClass::ALL
        .into_iter()
        .map(|c| classify(dist, c, grid).map(|r| (c, r)))
        .collect()
}
