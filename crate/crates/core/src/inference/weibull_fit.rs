use serde::{Deserialize, Serialize};

use super::{InferenceError, Sample};
use crate::distributions::WeibullParams;
use crate::numerics::{bisect, minimize_1d, OptimConfig};

/// 95% quantile of the chi-square distribution with one degree of freedom.
pub const CHI2_1_95: f64 = 3.841_458_820_694_124;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: WeibullParams<f64>,
    pub loglik: f64,
    /// Likelihood-ratio (profile) intervals.
    pub scale_ci_95: Interval,
    pub shape_ci_95: Interval,
    pub n: usize,
}

/// Complete-sample Weibull log-likelihood.
pub fn weibull_loglik(sample: &Sample, p: WeibullParams<f64>) -> f64 {
    let n = sample.len() as f64;
    let WeibullParams { scale, shape } = p;
    let mut acc = n * (shape.ln() - shape * scale.ln());
    for &x in sample.observations() {
        acc += (shape - 1.0) * x.ln() - (x / scale).powf(shape);
    }
    acc
}

/// Data divided by their geometric mean; keeps `x^k` finite for large `k`.
struct Scaled {
    z: Vec<f64>,
    ln_z: Vec<f64>,
    ln_gm: f64,
    sum_ln_x: f64,
}

impl Scaled {
    fn new(sample: &Sample) -> Self {
        let ln_x: Vec<f64> = sample.observations().iter().map(|x| x.ln()).collect();
        let sum_ln_x: f64 = ln_x.iter().sum();
        let ln_gm = sum_ln_x / ln_x.len() as f64;
        let ln_z: Vec<f64> = ln_x.iter().map(|l| l - ln_gm).collect();
        let z = ln_z.iter().map(|l| l.exp()).collect();
        Self { z, ln_z, ln_gm, sum_ln_x }
    }

    fn n(&self) -> f64 {
        self.z.len() as f64
    }

    /// ln β̂(k) for the original data.
    fn ln_scale_hat(&self, k: f64) -> f64 {
        let m = self.ln_z.iter().map(|l| (k * l).exp()).sum::<f64>() / self.n();
        self.ln_gm + m.ln() / k
    }

    /// Log-likelihood at (β, k) with β = exp(ln_b), in the scaled coordinates.
    fn loglik(&self, ln_b: f64, k: f64) -> f64 {
        let n = self.n();
        let shift = ln_b - self.ln_gm;
        let s: f64 = self.ln_z.iter().map(|l| (k * (l - shift)).exp()).sum();
        n * (k.ln() - k * ln_b) + (k - 1.0) * self.sum_ln_x - s
    }

    fn profile_k(&self, k: f64) -> f64 {
        self.loglik(self.ln_scale_hat(k), k)
    }

    /// max over k of the log-likelihood at fixed β.
    fn profile_scale(&self, ln_b: f64) -> Result<f64, InferenceError> {
        let cfg = OptimConfig::new(LN_K_LO, LN_K_HI, 1e-10, 500)?;
        let (_, v) = minimize_1d(|lk: f64| -self.loglik(ln_b, lk.exp()), &cfg)?;
        Ok(-v)
    }
}

const LN_K_LO: f64 = -4.605_170_185_988_091; // ln 0.01
const LN_K_HI: f64 = 5.298_317_366_548_036; // ln 200

/// Maximum-likelihood Weibull fit.
///
/// The scale has the closed form `β̂(k) = (mean x^k)^{1/k}`, so only the shape
/// is searched (golden section on `ln k`). Intervals are where twice the
/// log-likelihood drop stays below the χ²₁ 95% point.
pub fn weibull_mle(sample: &Sample) -> Result<FitResult, InferenceError> {
    if sample.len() < 3 {
        return Err(InferenceError::TooFew {
            needed: 3,
            got: sample.len(),
        });
    }
    let s = sample.sorted();
    if s[0] == s[s.len() - 1] {
        return Err(InferenceError::Degenerate);
    }
    let scaled = Scaled::new(sample);
    let cfg = OptimConfig::new(LN_K_LO, LN_K_HI, 1e-12, 1_000)?;
    let (ln_k, neg) = minimize_1d(|lk: f64| -scaled.profile_k(lk.exp()), &cfg)?;
    let k = ln_k.exp();
    let ln_b = scaled.ln_scale_hat(k);
    let loglik = -neg;
    let cut = loglik - CHI2_1_95 / 2.0;

    let shape_gap = |lk: f64| scaled.profile_k(lk.exp()) - cut;
    let shape_lo = bisect(shape_gap, LN_K_LO, ln_k, 1e-12, 500)?.exp();
    let shape_hi = bisect(shape_gap, ln_k, LN_K_HI, 1e-12, 500)?.exp();

    let scale_gap = |lb: f64| scaled.profile_scale(lb).map(|v| v - cut).unwrap_or(f64::NAN);
    let span = 20.0;
    let scale_lo = bisect(scale_gap, ln_b - span, ln_b, 1e-12, 500)?.exp();
    let scale_hi = bisect(scale_gap, ln_b, ln_b + span, 1e-12, 500)?.exp();

    Ok(FitResult {
        params: WeibullParams::new(ln_b.exp(), k)?,
        loglik,
        scale_ci_95: Interval {
            lo: scale_lo,
            hi: scale_hi,
        },
        shape_ci_95: Interval {
            lo: shape_lo,
            hi: shape_hi,
        },
        n: sample.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::simulate_weibull;

    #[test]
    fn recovers_synthetic_parameters() {
        let truth = WeibullParams::new(5.0, 2.0).unwrap();
        let sample = simulate_weibull(truth, 2000, 11);
        let fit = weibull_mle(&sample).unwrap();
        assert!((fit.params.scale / 5.0 - 1.0).abs() < 0.05);
        assert!((fit.params.shape / 2.0 - 1.0).abs() < 0.05);
        // Dense grid scan of the same likelihood as an oracle.
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 0..=200 {
            for j in 0..=200 {
                let b = 4.5 + i as f64 * 0.005;
                let k = 1.8 + j as f64 * 0.002;
                let l = weibull_loglik(&sample, WeibullParams { scale: b, shape: k });
                if l > best.0 {
                    best = (l, b, k);
                }
            }
        }
        assert!((fit.params.scale - best.1).abs() <= 0.005);
        assert!((fit.params.shape - best.2).abs() <= 0.002);
        assert!(fit.loglik >= best.0 - 1e-9);
        assert!(fit.scale_ci_95.contains(fit.params.scale));
        assert!(fit.shape_ci_95.contains(fit.params.shape));
    }

    #[test]
    fn stationary_point() {
        let sample = simulate_weibull(WeibullParams::new(3.0, 0.8).unwrap(), 300, 5);
        let fit = weibull_mle(&sample).unwrap();
        let p = fit.params;
        let h_b = 1e-6 * p.scale;
        let h_k = 1e-6 * p.shape;
        let l = |b: f64, k: f64| weibull_loglik(&sample, WeibullParams { scale: b, shape: k });
        let gb = (l(p.scale + h_b, p.shape) - l(p.scale - h_b, p.shape)) / (2.0 * h_b) * p.scale;
        let gk = (l(p.scale, p.shape + h_k) - l(p.scale, p.shape - h_k)) / (2.0 * h_k) * p.shape;
        assert!((gb * gb + gk * gk).sqrt() <= 1e-4 * sample.len() as f64);
    }

    #[test]
    fn interval_edges_sit_on_the_cutoff() {
        let sample = simulate_weibull(WeibullParams::new(1.0, 1.5).unwrap(), 60, 3);
        let fit = weibull_mle(&sample).unwrap();
        let scaled = Scaled::new(&sample);
        for k in [fit.shape_ci_95.lo, fit.shape_ci_95.hi] {
            let drop = 2.0 * (fit.loglik - scaled.profile_k(k));
            assert!((drop - CHI2_1_95).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_degenerate_samples() {
        let s = Sample::new(vec![2.0, 2.0, 2.0], "flat").unwrap();
        assert!(matches!(weibull_mle(&s), Err(InferenceError::Degenerate)));
        let s = Sample::new(vec![1.0, 2.0], "short").unwrap();
        assert!(matches!(weibull_mle(&s), Err(InferenceError::TooFew { .. })));
    }
}
