use super::{DistributionError, Lifetime};
use crate::real::Real;

/// Uniform lifetime on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformLifetime<T> {
    lo: T,
    hi: T,
}

impl<T: Real> UniformLifetime<T> {
    pub fn new(lo: T, hi: T) -> Result<Self, DistributionError> {
        if !(lo >= T::zero() && lo < hi && hi.is_finite()) {
            return Err(DistributionError::InvalidParameter {
                name: "uniform bounds",
                value: (hi - lo).to_f64_lossy(),
            });
        }
        Ok(Self { lo, hi })
    }
}

impl<T: Real> Lifetime<T> for UniformLifetime<T> {
    fn describe(&self) -> String {
        format!("uniform lo={} hi={}", self.lo, self.hi)
    }

    fn support(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    fn cdf(&self, x: T) -> T {
        ((x - self.lo) / (self.hi - self.lo)).max(T::zero()).min(T::one())
    }

    fn sf(&self, x: T) -> T {
        ((self.hi - x) / (self.hi - self.lo)).max(T::zero()).min(T::one())
    }

    fn pdf(&self, x: T) -> T {
        if x >= self.lo && x <= self.hi {
            T::one() / (self.hi - self.lo)
        } else {
            T::zero()
        }
    }

    fn integrated_sf(&self, x: T) -> T {
        let x = x.max(self.lo);
        if x >= self.hi {
            return T::zero();
        }
        let d = self.hi - x;
        d * d / (T::of(2.0) * (self.hi - self.lo))
    }

    fn integrated_cdf(&self, x: T) -> T {
        if x <= self.lo {
            return T::zero();
        }
        let d = x.min(self.hi) - self.lo;
        d * d / (T::of(2.0) * (self.hi - self.lo)) + (x - self.hi).max(T::zero())
    }

    fn quantile(&self, u: T) -> Result<T, DistributionError> {
        if !(u >= T::zero() && u <= T::one()) {
            return Err(DistributionError::Probability(u.to_f64_lossy()));
        }
        Ok(self.lo + u * (self.hi - self.lo))
    }
}
