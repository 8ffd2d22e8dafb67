//! Weibull baseline with Gamma(1/a², 1/a²) mixing truncated to `[1, ∞)`.
//!
//! With `α = b = 1/a²` and `x` the baseline exponent (`x = (t/β)^k` for
//! frailty, `x = -ln G(t)` for resilience):
//!
//! `E[e^{-Λx}]   = b^α (b+x)^{-α}   Γ(α,   b+x) / Γ(α, b)`
//! `E[Λ e^{-Λx}] = b^α (b+x)^{-α-1} Γ(α+1, b+x) / Γ(α, b)`

use super::{MixtureError, MixtureKind};
use crate::distributions::{positive, Lifetime, Weibull, WeibullParams};
use crate::numerics::{integrate, ln_upper_incomplete_gamma, QuadratureConfig};
use crate::real::{ln_one_minus_exp, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaClosedForm<T> {
    kind: MixtureKind,
    weibull: Weibull<T>,
    a: T,
    alpha: T,
    // ln of b^α / Γ(α, b)
    ln_k: T,
    ln_upper_b: T,
}

pub fn gamma_frailty_closed_form<T: Real>(baseline: WeibullParams<T>, a: T) -> Result<GammaClosedForm<T>, MixtureError> {
    GammaClosedForm::new(MixtureKind::Frailty, baseline, a)
}

pub fn gamma_resilience_closed_form<T: Real>(baseline: WeibullParams<T>, a: T) -> Result<GammaClosedForm<T>, MixtureError> {
    GammaClosedForm::new(MixtureKind::Resilience, baseline, a)
}

impl<T: Real> GammaClosedForm<T> {
    pub fn new(kind: MixtureKind, baseline: WeibullParams<T>, a: T) -> Result<Self, MixtureError> {
        let a = positive("a", a)?;
        let weibull = Weibull::new(baseline)?;
        let alpha = T::one() / (a * a);
        let ln_upper_b = ln_upper_incomplete_gamma(alpha, alpha)?;
        Ok(Self {
            kind,
            weibull,
            a,
            alpha,
            ln_k: alpha * alpha.ln() - ln_upper_b,
            ln_upper_b,
        })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn kind(&self) -> MixtureKind {
        self.kind
    }

    pub fn baseline(&self) -> Weibull<T> {
        self.weibull
    }

    fn exponent(&self, t: T) -> T {
        let s = self.weibull.cumulative_hazard(t);
        match self.kind {
            MixtureKind::Frailty => s,
            MixtureKind::Resilience => {
                if s == T::zero() {
                    T::infinity()
                } else {
                    -ln_one_minus_exp(s)
                }
            }
        }
    }

    /// `ln E[e^{-Λx}]`.
    fn ln_laplace(&self, x: T) -> Result<T, MixtureError> {
        if x == T::zero() {
            return Ok(T::zero());
        }
        if x == T::infinity() {
            return Ok(T::neg_infinity());
        }
        let b = self.alpha;
        Ok(self.ln_k - self.alpha * (b + x).ln() + ln_upper_incomplete_gamma(self.alpha, b + x)?)
    }

    /// `1 - E[e^{-Λx}]` written as a sum of two non-negative terms:
    /// `1 - (1+x/b)^{-α}` and `(1+x/b)^{-α} ∫_b^{b+x} u^{α-1} e^{-u} du / Γ(α, b)`.
    fn one_minus_laplace(&self, x: T) -> Result<T, MixtureError> {
        if x == T::zero() {
            return Ok(T::zero());
        }
        if x == T::infinity() {
            return Ok(T::one());
        }
        let b = self.alpha;
        let ln_shrink = -self.alpha * (x / b).ln_1p();
        let ln_ratio = ln_upper_incomplete_gamma(self.alpha, b + x)? - self.ln_upper_b;
        let slab = if ln_ratio < -T::LN_2() {
            -ln_ratio.exp_m1()
        } else {
            // Thin slab: integrate directly instead of differencing two close values.
            let ln_upper_b = self.ln_upper_b;
            let alpha = self.alpha;
            // Offset variable v = u - b, since b + x rounds to b for tiny x.
            let ln_b = b.ln();
            integrate(
                |v: T| ((alpha - T::one()) * (ln_b + (v / b).ln_1p()) - b - v - ln_upper_b).exp(),
                T::zero(),
                x,
                &QuadratureConfig::tight(),
            )?
        };
        Ok(-ln_shrink.exp_m1() + ln_shrink.exp() * slab)
    }

    pub fn try_ln_sf(&self, t: T) -> Result<T, MixtureError> {
        let x = self.exponent(t);
        match self.kind {
            MixtureKind::Frailty => self.ln_laplace(x),
            MixtureKind::Resilience => Ok(self.one_minus_laplace(x)?.ln()),
        }
    }

    pub fn try_ln_cdf(&self, t: T) -> Result<T, MixtureError> {
        let x = self.exponent(t);
        match self.kind {
            MixtureKind::Frailty => Ok(self.one_minus_laplace(x)?.ln()),
            MixtureKind::Resilience => self.ln_laplace(x),
        }
    }

    pub fn try_ln_pdf(&self, t: T) -> Result<T, MixtureError> {
        if t <= T::zero() {
            return Ok(T::neg_infinity().max(self.weibull.ln_pdf(t)));
        }
        let x = self.exponent(t);
        if x == T::infinity() {
            return Ok(T::neg_infinity());
        }
        let b = self.alpha;
        let tilt = self.ln_k - (self.alpha + T::one()) * (b + x).ln()
            + ln_upper_incomplete_gamma(self.alpha + T::one(), b + x)?;
        let prefactor = match self.kind {
            // f / F̄ is the hazard.
            MixtureKind::Frailty => self.weibull.ln_hazard_rate(t),
            // g / G = g · e^{x}
            MixtureKind::Resilience => self.weibull.ln_pdf(t) + x,
        };
        Ok(prefactor + tilt)
    }
}

fn or_nan<T: Real>(r: Result<T, MixtureError>) -> T {
    r.unwrap_or_else(|e| {
        log::warn!("closed-form evaluation failed: {e}");
        T::nan()
    })
}

impl<T: Real> Lifetime<T> for GammaClosedForm<T> {
    fn describe(&self) -> String {
        let kind = match self.kind {
            MixtureKind::Frailty => "frailty",
            MixtureKind::Resilience => "resilience",
        };
        format!(
            "{kind} baseline=({}) mixing=(truncgamma a={})",
            self.weibull.describe(),
            self.a
        )
    }

    fn support(&self) -> (T, T) {
        (T::zero(), T::infinity())
    }

    fn cdf(&self, x: T) -> T {
        self.ln_cdf(x).exp()
    }

    fn sf(&self, x: T) -> T {
        self.ln_sf(x).exp()
    }

    fn pdf(&self, x: T) -> T {
        self.ln_pdf(x).exp()
    }

    fn ln_pdf(&self, x: T) -> T {
        or_nan(self.try_ln_pdf(x))
    }

    fn ln_sf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        or_nan(self.try_ln_sf(x))
    }

    fn ln_cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::neg_infinity();
        }
        or_nan(self.try_ln_cdf(x))
    }
}
