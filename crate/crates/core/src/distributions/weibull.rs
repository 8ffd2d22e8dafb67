use serde::{Deserialize, Serialize};

use super::{positive, DistributionError, Lifetime};
use crate::numerics::ln_upper_incomplete_gamma;
use crate::real::{ln_one_minus_exp, Real};

/// Scale `β` and shape `k` of `F(x) = 1 - exp(-(x/β)^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullParams<T> {
    pub scale: T,
    pub shape: T,
}

impl<T: Real> WeibullParams<T> {
    pub fn new(scale: T, shape: T) -> Result<Self, DistributionError> {
        Ok(Self {
            scale: positive("scale", scale)?,
            shape: positive("shape", shape)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weibull<T> {
    params: WeibullParams<T>,
}

impl<T: Real> Weibull<T> {
    pub fn new(params: WeibullParams<T>) -> Result<Self, DistributionError> {
        WeibullParams::new(params.scale, params.shape).map(|params| Self { params })
    }

    pub fn with(scale: T, shape: T) -> Result<Self, DistributionError> {
        Self::new(WeibullParams { scale, shape })
    }

    /// Exponential law with the given rate.
    pub fn exponential(rate: T) -> Result<Self, DistributionError> {
        let rate = positive("rate", rate)?;
        Self::with(T::one() / rate, T::one())
    }

    pub fn params(&self) -> WeibullParams<T> {
        self.params
    }

    /// Cumulative hazard `(x/β)^k`.
    pub fn cumulative_hazard(&self, x: T) -> T {
        if x <= T::zero() {
            T::zero()
        } else {
            (x / self.params.scale).powf(self.params.shape)
        }
    }

    /// `d/dx (x/β)^k`, i.e. the hazard rate.
    pub fn hazard_rate(&self, x: T) -> T {
        let WeibullParams { scale, shape } = self.params;
        if x <= T::zero() {
            return if shape < T::one() {
                T::infinity()
            } else if shape == T::one() {
                T::one() / scale
            } else {
                T::zero()
            };
        }
        shape / scale * (x / scale).powf(shape - T::one())
    }

    pub fn ln_hazard_rate(&self, x: T) -> T {
        let WeibullParams { scale, shape } = self.params;
        shape.ln() - scale.ln() + (shape - T::one()) * (x / scale).ln()
    }
}

impl<T: Real> Lifetime<T> for Weibull<T> {
    fn describe(&self) -> String {
        format!(
            "weibull scale={} shape={}",
            self.params.scale, self.params.shape
        )
    }

    fn support(&self) -> (T, T) {
        (T::zero(), T::infinity())
    }

    fn cdf(&self, x: T) -> T {
        -(-self.cumulative_hazard(x)).exp_m1()
    }

    fn sf(&self, x: T) -> T {
        (-self.cumulative_hazard(x)).exp()
    }

    fn pdf(&self, x: T) -> T {
        if x < T::zero() {
            return T::zero();
        }
        self.hazard_rate(x) * self.sf(x)
    }

    fn ln_pdf(&self, x: T) -> T {
        if x <= T::zero() {
            return self.pdf(x).ln();
        }
        self.ln_hazard_rate(x) - self.cumulative_hazard(x)
    }

    fn ln_sf(&self, x: T) -> T {
        -self.cumulative_hazard(x)
    }

    fn ln_cdf(&self, x: T) -> T {
        ln_one_minus_exp(self.cumulative_hazard(x))
    }

    fn hazard(&self, x: T) -> Option<T> {
        if x > T::zero() {
            Some(self.hazard_rate(x))
        } else {
            None
        }
    }

    /// `(β/k) Γ(1/k, (x/β)^k)`.
    fn integrated_sf(&self, x: T) -> T {
        let WeibullParams { scale, shape } = self.params;
        let z = self.cumulative_hazard(x);
        match ln_upper_incomplete_gamma(T::one() / shape, z) {
            Ok(v) => (scale / shape) * v.exp(),
            Err(_) => T::nan(),
        }
    }

    fn mrl(&self, x: T) -> Option<T> {
        let WeibullParams { scale, shape } = self.params;
        let z = self.cumulative_hazard(x);
        let v = ln_upper_incomplete_gamma(T::one() / shape, z).ok()?;
        let m = (scale / shape) * (v + z).exp();
        if m.is_finite() {
            Some(m)
        } else {
            None
        }
    }

    fn quantile(&self, u: T) -> Result<T, DistributionError> {
        if !(u >= T::zero() && u <= T::one()) {
            return Err(DistributionError::Probability(u.to_f64_lossy()));
        }
        let WeibullParams { scale, shape } = self.params;
        Ok(scale * (-(-u).ln_1p()).powf(T::one() / shape))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_survival() {
        let w = Weibull::with(1.0_f64, 1.0).unwrap();
        assert!((w.sf(1.0) - (-1.0_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn rayleigh_hazard() {
        let w = Weibull::with(1.0_f64, 2.0).unwrap();
        assert!((w.hazard(3.0).unwrap() - 6.0).abs() < 1e-12);
        let ratio = w.pdf(3.0) / w.sf(3.0);
        assert!((ratio - 6.0).abs() < 1e-9);
    }

    #[test]
    fn leukaemia_baseline_starts_at_zero() {
        let w = Weibull::with(986.672_f64, 1.24044).unwrap();
        assert_eq!(w.cdf(0.0), 0.0);
        assert_eq!(w.sf(0.0), 1.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Weibull::with(0.0_f64, 1.0).is_err());
        assert!(Weibull::with(1.0_f64, -2.0).is_err());
        assert!(Weibull::with(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn mrl_of_exponential_is_constant() {
        let e = Weibull::exponential(2.0_f64).unwrap();
        for x in [0.0, 0.5, 3.0, 20.0] {
            assert!((e.mrl(x).unwrap() - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let w = Weibull::with(3.0_f64, 0.7).unwrap();
        for u in [0.01, 0.3, 0.5, 0.99] {
            let q = w.quantile(u).unwrap();
            assert!((w.cdf(q) - u).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_integral_matches_quadrature() {
        let w = Weibull::with(2.0_f64, 1.7).unwrap();
        let cfg = crate::numerics::QuadratureConfig::tight();
        for x in [0.0, 0.3, 2.0, 5.0] {
            let q = crate::numerics::integrate(|u| w.sf(u), x, f64::INFINITY, &cfg).unwrap();
            assert!((w.integrated_sf(x) - q).abs() < 1e-10 * q.max(1e-300));
        }
    }
}
