use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{weibull_loglik, InferenceError, Sample};
use crate::distributions::WeibullParams;
use crate::mixture::{GammaClosedForm, MixtureKind};
use crate::numerics::{minimize_1d, OptimConfig};

/// Search bracket for `a`.
pub const A_BRACKET: (f64, f64) = (0.05, 20.0);

const SCAN_POINTS: usize = 48;
/// Below this second derivative (in `ln a`, per observation) the optimum is
/// reported as flat.
const FLAT_CURVATURE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AFit {
    pub kind: MixtureKind,
    pub a: f64,
    pub loglik: f64,
    /// Log-likelihood of the frozen baseline alone (the `a → 0` limit).
    pub baseline_loglik: f64,
    /// `-d²ℓ/d(ln a)²` at the optimum.
    pub curvature: f64,
    pub at_boundary: bool,
    pub flat: bool,
}

/// Log-likelihood of the truncated-gamma mixture with the baseline frozen.
pub fn mixture_loglik(
    sample: &Sample,
    kind: MixtureKind,
    baseline: WeibullParams<f64>,
    a: f64,
) -> Result<f64, InferenceError> {
    let model = GammaClosedForm::new(kind, baseline, a)?;
    let terms: Result<Vec<f64>, _> = sample
        .observations()
        .par_iter()
        .map(|&x| model.try_ln_pdf(x))
        .collect();
    Ok(terms?.iter().sum())
}

fn fit_a(sample: &Sample, kind: MixtureKind, baseline: WeibullParams<f64>) -> Result<AFit, InferenceError> {
    let (lo, hi) = (A_BRACKET.0.ln(), A_BRACKET.1.ln());
    let ll = |ln_a: f64| mixture_loglik(sample, kind, baseline, ln_a.exp()).unwrap_or(f64::NEG_INFINITY);

    // Coarse scan first; the likelihood need not be unimodal over the bracket.
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let scan: Vec<f64> = (0..SCAN_POINTS).map(|i| ll(lo + step * i as f64)).collect();
    let best = (0..SCAN_POINTS)
        .max_by(|&i, &j| scan[i].total_cmp(&scan[j]))
        .expect("non-empty scan");
    let left = lo + step * best.saturating_sub(1) as f64;
    let right = (lo + step * (best + 1) as f64).min(hi);
    let cfg = OptimConfig::new(left, right, 1e-9, 500)?;
    let (mut ln_a, neg) = minimize_1d(|v| -ll(v), &cfg)?;
    let mut loglik = -neg;
    for (i, &v) in scan.iter().enumerate() {
        if v > loglik {
            loglik = v;
            ln_a = lo + step * i as f64;
        }
    }
    if !loglik.is_finite() {
        return Err(crate::numerics::NumericsError::NonFinite {
            routine: "mixture likelihood",
            at: ln_a.exp(),
        }
        .into());
    }
    let h = 1e-3;
    let at_boundary = ln_a - lo < 2.0 * h || hi - ln_a < 2.0 * h;
    let (c_lo, c_hi) = if at_boundary {
        if ln_a - lo < 2.0 * h {
            (lo, lo + 2.0 * h)
        } else {
            (hi - 2.0 * h, hi)
        }
    } else {
        (ln_a - h, ln_a + h)
    };
    let mid = 0.5 * (c_lo + c_hi);
    let curvature = -(ll(c_hi) - 2.0 * ll(mid) + ll(c_lo)) / (h * h);
    let flat = curvature.abs() < FLAT_CURVATURE * sample.len() as f64;
    let a = ln_a.exp();
    if at_boundary {
        log::warn!("mixture parameter estimate a = {a} sits on the search bracket edge");
    }
    if flat {
        log::warn!("likelihood in a is flat at the optimum (curvature {curvature:e})");
    }
    Ok(AFit {
        kind,
        a,
        loglik,
        baseline_loglik: weibull_loglik(sample, baseline),
        curvature,
        at_boundary,
        flat,
    })
}

/// Fits `a` of the truncated-gamma frailty model, baseline held fixed.
pub fn fit_frailty_a(sample: &Sample, baseline: WeibullParams<f64>) -> Result<AFit, InferenceError> {
    fit_a(sample, MixtureKind::Frailty, baseline)
}

/// Fits `a` of the truncated-gamma resilience model, baseline held fixed.
pub fn fit_resilience_a(sample: &Sample, baseline: WeibullParams<f64>) -> Result<AFit, InferenceError> {
    fit_a(sample, MixtureKind::Resilience, baseline)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::{simulate_frailty, simulate_resilience};

    fn grid_oracle(sample: &Sample, kind: MixtureKind, p: WeibullParams<f64>) -> f64 {
        (0..=400)
            .map(|i| 0.05 * (400.0_f64).powf(i as f64 / 400.0))
            .map(|a| (a, mixture_loglik(sample, kind, p, a).unwrap()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap()
            .0
    }

    #[test]
    fn frailty_recovery() {
        let p = WeibullParams::new(1.0, 1.5).unwrap();
        let s = simulate_frailty(p, 1.0, 5000, 21);
        let fit = fit_frailty_a(&s, p).unwrap();
        assert!((fit.a - 1.0).abs() < 0.15, "a = {}", fit.a);
        let oracle = grid_oracle(&s, MixtureKind::Frailty, p);
        assert!((fit.a / oracle - 1.0).abs() < 0.02);
        assert!(!fit.at_boundary);
        // Derivative changes sign across the optimum.
        let d = 1e-2 * fit.a;
        let l = |a| mixture_loglik(&s, MixtureKind::Frailty, p, a).unwrap();
        assert!(l(fit.a) >= l(fit.a - d) && l(fit.a) >= l(fit.a + d));
    }

    #[test]
    fn resilience_recovery() {
        let p = WeibullParams::new(1.0, 2.0).unwrap();
        let s = simulate_resilience(p, 2.0, 5000, 22);
        let fit = fit_resilience_a(&s, p).unwrap();
        assert!((fit.a - 2.0).abs() < 0.3, "a = {}", fit.a);
        let oracle = grid_oracle(&s, MixtureKind::Resilience, p);
        assert!((fit.a / oracle - 1.0).abs() < 0.02);
    }

    #[test]
    fn small_a_approaches_baseline_likelihood() {
        let p = WeibullParams::new(1.0, 1.5).unwrap();
        let s = crate::inference::simulate_weibull(p, 200, 3);
        let base = weibull_loglik(&s, p);
        for kind in [MixtureKind::Frailty, MixtureKind::Resilience] {
            let l = mixture_loglik(&s, kind, p, 0.05).unwrap();
            // E[Λ] - 1 is O(a) for the truncated law, so the gap is O(n a).
            assert!((l - base).abs() < 0.1 * s.len() as f64 * 0.05, "{kind:?}: {l} vs {base}");
            let l = mixture_loglik(&s, kind, p, 0.002).unwrap();
            assert!((l - base).abs() < 1e-2 * s.len() as f64 * 0.002 * 10.0);
        }
    }
}
