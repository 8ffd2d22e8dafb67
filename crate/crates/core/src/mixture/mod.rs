//! Frailty `F̄*(t) = E[F̄(t)^Λ]` and resilience `G*(t) = E[G(t)^Ω]` mixtures.

mod closed_form;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{DistributionError, Lifetime, MixingDistribution, Weibull, WeibullParams};
use crate::numerics::{NumericsError, QuadratureConfig};
use crate::real::Real;

pub use closed_form::{gamma_frailty_closed_form, gamma_resilience_closed_form, GammaClosedForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MixtureError {
    #[error("expected a {expected:?} model")]
    KindMismatch { expected: MixtureKind },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixtureKind {
    /// Mixes powers of the baseline survival function.
    Frailty,
    /// Mixes powers of the baseline cdf.
    Resilience,
}

/// Mixture evaluated by quadrature against the mixing law.
///
/// Everything runs on `ℓ = ln F̄(t)` (frailty) or `ℓ = ln G(t)` (resilience),
/// so the power `F̄^λ = exp(λℓ)` never underflows before the logarithm is taken.
#[derive(Clone)]
pub struct MixtureModel<T: Real> {
    kind: MixtureKind,
    baseline: Arc<dyn Lifetime<T>>,
    mixing: MixingDistribution<T>,
    quad: QuadratureConfig<T>,
}

impl<T: Real> fmt::Debug for MixtureModel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixtureModel")
            .field("kind", &self.kind)
            .field("baseline", &self.baseline.describe())
            .field("mixing", &self.mixing)
            .finish()
    }
}

impl<T: Real> MixtureModel<T> {
    pub fn new(kind: MixtureKind, baseline: Arc<dyn Lifetime<T>>, mixing: MixingDistribution<T>) -> Self {
        Self {
            kind,
            baseline,
            mixing,
            quad: QuadratureConfig::tight(),
        }
    }

    pub fn frailty(baseline: Arc<dyn Lifetime<T>>, mixing: MixingDistribution<T>) -> Self {
        Self::new(MixtureKind::Frailty, baseline, mixing)
    }

    pub fn resilience(baseline: Arc<dyn Lifetime<T>>, mixing: MixingDistribution<T>) -> Self {
        Self::new(MixtureKind::Resilience, baseline, mixing)
    }

    /// Weibull baseline with Gamma(1/a², 1/a²) mixing truncated to `[1, ∞)`.
    pub fn truncated_gamma_weibull(kind: MixtureKind, params: WeibullParams<T>, a: T) -> Result<Self, MixtureError> {
        let baseline = Arc::new(Weibull::new(params)?);
        Ok(Self::new(kind, baseline, MixingDistribution::truncated_gamma_from_a(a)?))
    }

    pub fn with_quadrature(mut self, quad: QuadratureConfig<T>) -> Self {
        self.quad = quad;
        self
    }

    pub fn kind(&self) -> MixtureKind {
        self.kind
    }

    pub fn baseline(&self) -> &Arc<dyn Lifetime<T>> {
        &self.baseline
    }

    pub fn mixing(&self) -> &MixingDistribution<T> {
        &self.mixing
    }

    fn exponent(&self, t: T) -> T {
        match self.kind {
            MixtureKind::Frailty => self.baseline.ln_sf(t),
            MixtureKind::Resilience => self.baseline.ln_cdf(t),
        }
    }

    /// `(ln P, 1 - P)` where `P` is the mixed sf (frailty) or cdf (resilience).
    /// The smaller of `P` and `1 - P` is integrated directly.
    fn try_pair(&self, t: T) -> Result<(T, T), MixtureError> {
        let ell = self.exponent(t);
        if ell >= T::zero() {
            return Ok((T::zero(), T::zero()));
        }
        if ell == T::neg_infinity() {
            return Ok((T::neg_infinity(), T::one()));
        }
        let ln_p = self.mixing.ln_expect_exp(ell, 0, &self.quad)?;
        if ln_p.exp() <= T::of(0.5) {
            return Ok((ln_p, -ln_p.exp_m1()));
        }
        let c = self.mixing.expect_one_minus_exp(ell, &self.quad)?;
        Ok(((-c).ln_1p(), c))
    }

    pub fn try_ln_sf(&self, t: T) -> Result<T, MixtureError> {
        let (ln_p, c) = self.try_pair(t)?;
        Ok(match self.kind {
            MixtureKind::Frailty => ln_p,
            MixtureKind::Resilience => c.ln(),
        })
    }

    pub fn try_ln_cdf(&self, t: T) -> Result<T, MixtureError> {
        let (ln_p, c) = self.try_pair(t)?;
        Ok(match self.kind {
            MixtureKind::Frailty => c.ln(),
            MixtureKind::Resilience => ln_p,
        })
    }

    pub fn try_sf(&self, t: T) -> Result<T, MixtureError> {
        let (ln_p, c) = self.try_pair(t)?;
        Ok(match self.kind {
            MixtureKind::Frailty => ln_p.exp(),
            MixtureKind::Resilience => c,
        })
    }

    pub fn try_cdf(&self, t: T) -> Result<T, MixtureError> {
        let (ln_p, c) = self.try_pair(t)?;
        Ok(match self.kind {
            MixtureKind::Frailty => c,
            MixtureKind::Resilience => ln_p.exp(),
        })
    }

    /// `ln f*(t) = ln f(t) - ℓ + ln E[Λ e^{Λℓ}]`.
    pub fn try_ln_pdf(&self, t: T) -> Result<T, MixtureError> {
        let ln_f = self.baseline.ln_pdf(t);
        if ln_f == T::neg_infinity() {
            return Ok(ln_f);
        }
        let ell = self.exponent(t);
        if ell == T::neg_infinity() {
            return Ok(T::neg_infinity());
        }
        let ell = ell.min(T::zero());
        let ln_e = self.mixing.ln_expect_exp(ell, 1, &self.quad)?;
        Ok(ln_f - ell + ln_e)
    }

    pub fn try_pdf(&self, t: T) -> Result<T, MixtureError> {
        Ok(self.try_ln_pdf(t)?.exp())
    }

    fn require(&self, kind: MixtureKind) -> Result<(), MixtureError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(MixtureError::KindMismatch { expected: kind })
        }
    }
}

fn or_nan<T: Real>(r: Result<T, MixtureError>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => {
            log::warn!("mixture evaluation failed: {e}");
            T::nan()
        }
    }
}

impl<T: Real> Lifetime<T> for MixtureModel<T> {
    fn describe(&self) -> String {
        let kind = match self.kind {
            MixtureKind::Frailty => "frailty",
            MixtureKind::Resilience => "resilience",
        };
        format!(
            "{kind} baseline=({}) mixing=({})",
            self.baseline.describe(),
            self.mixing.describe()
        )
    }

    fn support(&self) -> (T, T) {
        self.baseline.support()
    }

    fn cdf(&self, x: T) -> T {
        or_nan(self.try_cdf(x))
    }

    fn sf(&self, x: T) -> T {
        or_nan(self.try_sf(x))
    }

    fn pdf(&self, x: T) -> T {
        or_nan(self.try_pdf(x))
    }

    fn ln_pdf(&self, x: T) -> T {
        or_nan(self.try_ln_pdf(x))
    }

    fn ln_sf(&self, x: T) -> T {
        or_nan(self.try_ln_sf(x))
    }

    fn ln_cdf(&self, x: T) -> T {
        or_nan(self.try_ln_cdf(x))
    }
}

/// `F̄*(t) = E[F̄(t)^Λ]`.
pub fn frailty_sf<T: Real>(model: &MixtureModel<T>, t: T) -> Result<T, MixtureError> {
    model.require(MixtureKind::Frailty)?;
    model.try_sf(t)
}

/// `f*(t) = f(t) E[Λ F̄(t)^{Λ-1}]`.
pub fn frailty_pdf<T: Real>(model: &MixtureModel<T>, t: T) -> Result<T, MixtureError> {
    model.require(MixtureKind::Frailty)?;
    model.try_pdf(t)
}

/// `G*(t) = E[G(t)^Ω]`.
pub fn resilience_cdf<T: Real>(model: &MixtureModel<T>, t: T) -> Result<T, MixtureError> {
    model.require(MixtureKind::Resilience)?;
    model.try_cdf(t)
}

/// `g*(t) = g(t) E[Ω G(t)^{Ω-1}]`.
pub fn resilience_pdf<T: Real>(model: &MixtureModel<T>, t: T) -> Result<T, MixtureError> {
    model.require(MixtureKind::Resilience)?;
    model.try_pdf(t)
}
