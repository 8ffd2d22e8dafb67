//! Lifetime distributions and mixing-variable laws.

mod mixing;
mod pdf_table;
mod reflected;
mod uniform;
mod weibull;

use std::fmt::Debug;

use thiserror::Error;

use crate::numerics::{bisect, integrate, NumericsError, QuadratureConfig};
use crate::real::Real;

pub use mixing::{GammaParams, MixingDistribution, SupportPredicate};
pub use pdf_table::PdfDistribution;
pub use reflected::ReflectedWeibull;
pub use uniform::UniformLifetime;
pub use weibull::{Weibull, WeibullParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("density integrates to {mass}, not 1")]
    Normalization { mass: f64 },
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub fn positive<T: Real>(name: &'static str, v: T) -> Result<T, DistributionError> {
    if v > T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(DistributionError::InvalidParameter {
            name,
            value: v.to_f64_lossy(),
        })
    }
}

/// Quadrature settings for the mrl / mit integrals.
pub fn integral_quadrature<T: Real>() -> QuadratureConfig<T> {
    let floor = T::epsilon() * T::of(100.0);
    QuadratureConfig {
        abs_tol: T::min_positive_value(),
        rel_tol: T::of(1e-10).max(floor),
        max_subdivisions: 2_000,
    }
}

/// A continuous lifetime law with the reliability function set.
///
/// Evaluation never panics. Functions that are undefined at a point (ratio
/// with a vanishing denominator, a failed quadrature) report `None` or NaN so
/// grid scanners can skip the point.
pub trait Lifetime<T: Real>: Debug + Send + Sync {
    fn describe(&self) -> String;

    /// `(lo, hi)`; `hi` may be `+inf`.
    fn support(&self) -> (T, T);

    fn cdf(&self, x: T) -> T;
    fn sf(&self, x: T) -> T;
    fn pdf(&self, x: T) -> T;

    fn ln_pdf(&self, x: T) -> T {
        self.pdf(x).ln()
    }
    fn ln_sf(&self, x: T) -> T {
        self.sf(x).ln()
    }
    fn ln_cdf(&self, x: T) -> T {
        self.cdf(x).ln()
    }

    fn hazard(&self, x: T) -> Option<T> {
        let (lo, hi) = self.support();
        if !(x >= lo && x < hi) {
            return None;
        }
        finite_nonneg((self.ln_pdf(x) - self.ln_sf(x)).exp())
    }

    fn reversed_hazard(&self, x: T) -> Option<T> {
        let (lo, hi) = self.support();
        if !(x > lo && x <= hi) {
            return None;
        }
        finite_nonneg((self.ln_pdf(x) - self.ln_cdf(x)).exp())
    }

    /// `∫ₓ^∞ F̄(u) du`, NaN if the quadrature fails.
    fn integrated_sf(&self, x: T) -> T {
        let (lo, hi) = self.support();
        let x = x.max(lo);
        if x >= hi {
            return T::zero();
        }
        integrate(|u| self.sf(u), x, hi, &integral_quadrature()).unwrap_or(T::nan())
    }

    /// `∫₀ˣ F(u) du`, NaN if the quadrature fails.
    fn integrated_cdf(&self, x: T) -> T {
        let (lo, hi) = self.support();
        if x <= lo {
            return T::zero();
        }
        let head = integrate(|u| self.cdf(u), lo, x.min(hi), &integral_quadrature());
        match head {
            Ok(v) if x > hi => v + (x - hi),
            Ok(v) => v,
            Err(_) => T::nan(),
        }
    }

    fn mrl(&self, x: T) -> Option<T> {
        let sf = self.sf(x);
        if !(sf > T::zero()) {
            return None;
        }
        finite_nonneg(self.integrated_sf(x) / sf)
    }

    fn mit(&self, x: T) -> Option<T> {
        let cdf = self.cdf(x);
        if !(cdf > T::zero()) {
            return None;
        }
        finite_nonneg(self.integrated_cdf(x) / cdf)
    }

    /// `F⁻¹(u)` by bisection on the cdf.
    fn quantile(&self, u: T) -> Result<T, DistributionError> {
        bisection_quantile(self, u)
    }
}

fn finite_nonneg<T: Real>(v: T) -> Option<T> {
    if v.is_finite() && v >= T::zero() {
        Some(v)
    } else {
        None
    }
}

pub(crate) fn bisection_quantile<T: Real, D: Lifetime<T> + ?Sized>(
    d: &D,
    u: T,
) -> Result<T, DistributionError> {
    if !(u >= T::zero() && u <= T::one()) {
        return Err(DistributionError::Probability(u.to_f64_lossy()));
    }
    let (lo, hi) = d.support();
    if u == T::zero() {
        return Ok(lo);
    }
    if u == T::one() {
        return Ok(hi);
    }
    let mut upper = hi;
    if !upper.is_finite() {
        upper = lo + lo.abs().max(T::one());
        let mut tries = 0;
        while d.cdf(upper) < u {
            upper = lo + (upper - lo) * T::of(2.0);
            tries += 1;
            if tries > 2_000 || !upper.is_finite() {
                return Err(NumericsError::NonConvergence {
                    routine: "quantile bracket",
                    iterations: tries,
                }
                .into());
            }
        }
    }
    // Compare on the smaller tail so upper quantiles keep their resolution.
    let g = |x: T| {
        if u <= T::of(0.5) {
            d.cdf(x) - u
        } else {
            (T::one() - u) - d.sf(x)
        }
    };
    let tol = T::epsilon() * T::of(4.0) * upper.abs().max(T::min_positive_value());
    Ok(bisect(g, lo, upper, tol, 4_000)?)
}

impl<T: Real, D: Lifetime<T> + ?Sized> Lifetime<T> for std::sync::Arc<D> {
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn support(&self) -> (T, T) {
        (**self).support()
    }
    fn cdf(&self, x: T) -> T {
        (**self).cdf(x)
    }
    fn sf(&self, x: T) -> T {
        (**self).sf(x)
    }
    fn pdf(&self, x: T) -> T {
        (**self).pdf(x)
    }
    fn ln_pdf(&self, x: T) -> T {
        (**self).ln_pdf(x)
    }
    fn ln_sf(&self, x: T) -> T {
        (**self).ln_sf(x)
    }
    fn ln_cdf(&self, x: T) -> T {
        (**self).ln_cdf(x)
    }
    fn hazard(&self, x: T) -> Option<T> {
        (**self).hazard(x)
    }
    fn reversed_hazard(&self, x: T) -> Option<T> {
        (**self).reversed_hazard(x)
    }
    fn integrated_sf(&self, x: T) -> T {
        (**self).integrated_sf(x)
    }
    fn integrated_cdf(&self, x: T) -> T {
        (**self).integrated_cdf(x)
    }
    fn mrl(&self, x: T) -> Option<T> {
        (**self).mrl(x)
    }
    fn mit(&self, x: T) -> Option<T> {
        (**self).mit(x)
    }
    fn quantile(&self, u: T) -> Result<T, DistributionError> {
        (**self).quantile(u)
    }
}
