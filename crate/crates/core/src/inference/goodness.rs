use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::simulate::weibull_draws;
use super::{weibull_mle, InferenceError, Sample};
use crate::distributions::{Lifetime, Weibull, WeibullParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BootstrapNull {
    /// Replicates drawn from, and tested against, the supplied parameters.
    Fixed,
    /// Each replicate is refitted before its statistic is computed.
    Refit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapOptions {
    pub replicates: usize,
    pub seed: u64,
    pub null: BootstrapNull,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        Self {
            replicates: 10_000,
            seed: 20_240_601,
            null: BootstrapNull::Fixed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ADResult {
    pub statistic: f64,
    pub p_value: f64,
    /// 5% level.
    pub critical_value: f64,
    pub replicates: usize,
    pub seed: u64,
    pub null: BootstrapNull,
}

/// A² from sorted data:
/// `-n - (1/n) Σ (2i-1) [ln F(x_(i)) + ln F̄(x_(n+1-i))]`.
pub fn anderson_darling_statistic(sorted: &[f64], dist: &dyn Lifetime<f64>) -> f64 {
    let n = sorted.len();
    let ln_cdf: Vec<f64> = sorted.iter().map(|&x| dist.ln_cdf(x)).collect();
    let ln_sf: Vec<f64> = sorted.iter().map(|&x| dist.ln_sf(x)).collect();
    let s: f64 = (0..n)
        .map(|i| (2 * i + 1) as f64 * (ln_cdf[i] + ln_sf[n - 1 - i]))
        .sum();
    (-(n as f64) - s / n as f64).max(0.0)
}

fn replicate_statistic(p: WeibullParams<f64>, n: usize, opts: &BootstrapOptions, r: usize) -> Option<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(r as u64);
    let mut xs = weibull_draws(&mut rng, p, n);
    xs.sort_by(f64::total_cmp);
    let params = match opts.null {
        BootstrapNull::Fixed => p,
        BootstrapNull::Refit => weibull_mle(&Sample::new(xs.clone(), "replicate").ok()?).ok()?.params,
    };
    let d = Weibull::new(params).ok()?;
    Some(anderson_darling_statistic(&xs, &d))
}

/// Anderson–Darling test of a Weibull fit with a parametric-bootstrap null.
///
/// Replicate `r` uses `ChaCha8Rng::seed_from_u64(seed)` on stream `r`, so the
/// result does not depend on thread scheduling.
pub fn anderson_darling_weibull(
    sample: &Sample,
    params: WeibullParams<f64>,
    opts: &BootstrapOptions,
) -> Result<ADResult, InferenceError> {
    if opts.replicates == 0 {
        return Err(InferenceError::TooFew { needed: 1, got: 0 });
    }
    let dist = Weibull::new(params)?;
    let statistic = anderson_darling_statistic(sample.sorted(), &dist);
    let n = sample.len();
    let mut null: Vec<f64> = (0..opts.replicates)
        .into_par_iter()
        .filter_map(|r| replicate_statistic(params, n, opts, r))
        .collect();
    if null.is_empty() {
        return Err(InferenceError::TooFew {
            needed: 1,
            got: 0,
        });
    }
    null.sort_by(f64::total_cmp);
    let exceed = null.iter().filter(|&&v| v >= statistic).count();
    let idx = ((0.95 * null.len() as f64).ceil() as usize).clamp(1, null.len()) - 1;
    Ok(ADResult {
        statistic,
        p_value: exceed as f64 / null.len() as f64,
        critical_value: null[idx],
        replicates: null.len(),
        seed: opts.seed,
        null: opts.null,
    })
}

/// `(F⁻¹((i-0.5)/n), x_(i))` for `i = 1..n`.
pub fn qq_data(sample: &Sample, params: WeibullParams<f64>) -> Result<Vec<(f64, f64)>, InferenceError> {
    let d = Weibull::new(params)?;
    let n = sample.len() as f64;
    sample
        .sorted()
        .iter()
        .enumerate()
        .map(|(i, &x)| Ok((d.quantile((i as f64 + 0.5) / n)?, x)))
        .collect()
}
