//! Grid scanner shared by the ageing classifier and the order checks.
//!
//! Every check is reduced to "this log-ratio series is monotone in x for each
//! shift t". Working with log values keeps ratios of underflowing quantities
//! (survival at t ~ 3000 days) well conditioned.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{DistributionError, Lifetime};
use crate::mixture::MixtureError;
use crate::real::{linspace, Real};

/// Points needed per shift after domain skipping.
pub const MIN_USABLE_POINTS: usize = 8;
/// Skipped fraction above which a non-failing scan is inconclusive.
pub const MAX_SKIP_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("only {usable} usable grid points at t = {t} (need {MIN_USABLE_POINTS})")]
    InsufficientGrid { usable: usize, t: f64 },
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Mixture(#[from] MixtureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub t: Option<f64>,
}

/// Outcome of a grid monotonicity check.
///
/// `worst_margin` is the smallest signed step of the log-ratio in the
/// required direction (negative means a violation); `strict` records that
/// some step exceeded the slack, i.e. the ratio is not merely constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub subject: String,
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub witness: Option<Witness>,
    pub skipped_fraction: f64,
    pub strict: bool,
    pub pairs: usize,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// x-grid, shift offsets and tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T> {
    pub x_lo: T,
    pub x_hi: T,
    pub n_x: usize,
    pub t_values: Vec<T>,
    pub slack: T,
}

impl<T: Real> GridSpec<T> {
    /// Shifts default to `{0.1, 0.5, 1, 2} · (x_hi - x_lo) / 4`, slack to 1e-9.
    pub fn new(x_lo: T, x_hi: T, n_x: usize) -> Result<Self, CheckError> {
        let quarter = (x_hi - x_lo) / T::of(4.0);
        let t_values = [0.1, 0.5, 1.0, 2.0].iter().map(|&m| quarter * T::of(m)).collect();
        Self::with_shifts(x_lo, x_hi, n_x, t_values)
    }

    pub fn with_shifts(x_lo: T, x_hi: T, n_x: usize, t_values: Vec<T>) -> Result<Self, CheckError> {
        let g = Self {
            x_lo,
            x_hi,
            n_x,
            t_values,
            slack: T::of(1e-9),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_slack(mut self, slack: T) -> Result<Self, CheckError> {
        self.slack = slack;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CheckError> {
        if !(self.x_lo < self.x_hi) || !self.x_lo.is_finite() || !self.x_hi.is_finite() {
            return Err(CheckError::InvalidGrid(format!(
                "need finite x_lo < x_hi, got [{}, {}]",
                self.x_lo, self.x_hi
            )));
        }
        if self.n_x < 16 {
            return Err(CheckError::InvalidGrid(format!("n_x = {} < 16", self.n_x)));
        }
        if self.t_values.is_empty() || self.t_values.iter().any(|t| !(*t > T::zero() && t.is_finite())) {
            return Err(CheckError::InvalidGrid("t values must be positive".into()));
        }
        if !(self.slack >= T::zero()) {
            return Err(CheckError::InvalidGrid("slack must be non-negative".into()));
        }
        Ok(())
    }

    pub fn xs(&self) -> Vec<T> {
        linspace(self.x_lo, self.x_hi, self.n_x)
    }
}

/// Log of the function whose ratios a check compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Profile {
    Pdf,
    Sf,
    Cdf,
    /// `∫ₓ^∞ F̄`
    TailIntegral,
    /// `∫₀ˣ F`
    HeadIntegral,
}

impl Profile {
    pub(crate) fn ln_eval<T: Real>(self, d: &dyn Lifetime<T>, x: T) -> T {
        match self {
            Profile::Pdf => d.ln_pdf(x),
            Profile::Sf => d.ln_sf(x),
            Profile::Cdf => d.ln_cdf(x),
            Profile::TailIntegral => d.integrated_sf(x).ln(),
            Profile::HeadIntegral => d.integrated_cdf(x).ln(),
        }
    }

    pub(crate) fn ln_series<T: Real>(self, d: &dyn Lifetime<T>, xs: &[T], shift: T) -> Vec<T> {
        xs.par_iter().map(|&x| self.ln_eval(d, x + shift)).collect()
    }
}

/// Required direction of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Monotonicity of a single series of log values, e.g. a re-read curve dump.
pub fn check_log_series<T: Real>(
    subject: impl Into<String>,
    xs: &[T],
    ln_values: &[T],
    direction: Direction,
    slack: T,
) -> Result<MonotonicityReport, CheckError> {
    if xs.len() != ln_values.len() || xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CheckError::InvalidGrid("x must increase strictly and match the series length".into()));
    }
    let mut r = scan(subject.into(), xs, &[T::zero()], &[ln_values.to_vec()], direction, slack)?;
    if let Some(w) = r.witness.as_mut() {
        w.t = None;
    }
    Ok(r)
}

/// Scans `series[k][i]` (one row per shift) for monotonicity in `i`.
pub(crate) fn scan<T: Real>(
    subject: String,
    xs: &[T],
    shifts: &[T],
    rows: &[Vec<T>],
    direction: Direction,
    slack: T,
) -> Result<MonotonicityReport, CheckError> {
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut skipped = 0usize;
    let mut total = 0usize;
    let mut pairs = 0usize;
    let mut strict = false;
    let mut failed = false;
    let tiny = T::epsilon() * T::of(64.0);
    for (row, &t) in rows.iter().zip(shifts) {
        total += row.len();
        let usable: Vec<(T, T)> = xs
            .iter()
            .zip(row)
            .filter(|(_, v)| v.is_finite())
            .map(|(&x, &v)| (x, v))
            .collect();
        skipped += row.len() - usable.len();
        if usable.len() < MIN_USABLE_POINTS {
            return Err(CheckError::InsufficientGrid {
                usable: usable.len(),
                t: t.to_f64_lossy(),
            });
        }
        for w in usable.windows(2) {
            let (x0, v0) = w[0];
            let (_, v1) = w[1];
            let step = match direction {
                Direction::Increasing => v1 - v0,
                Direction::Decreasing => v0 - v1,
            };
            let tol = slack + tiny * v0.abs().max(v1.abs()).max(T::one());
            pairs += 1;
            if step > tol {
                strict = true;
            }
            if step < -tol {
                failed = true;
            }
            let m = step.to_f64_lossy();
            if m < worst {
                worst = m;
                witness = Some(Witness {
                    x: x0.to_f64_lossy(),
                    t: Some(t.to_f64_lossy()),
                });
            }
        }
    }
    let skipped_fraction = if total == 0 { 0.0 } else { skipped as f64 / total as f64 };
    let verdict = if failed {
        Verdict::Fails
    } else if skipped_fraction > MAX_SKIP_FRACTION {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    };
    Ok(MonotonicityReport {
        subject,
        verdict,
        worst_margin: worst,
        witness: if verdict == Verdict::Fails { witness } else { None },
        skipped_fraction,
        strict,
        pairs,
    })
}
