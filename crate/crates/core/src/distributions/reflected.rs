use super::{positive, DistributionError, Lifetime};
use crate::real::Real;

/// Weibull reflected about `upper` and conditioned on `[0, upper]`:
/// `F(x) ∝ exp(-((upper - x)/β)^k) - p0`, `p0 = exp(-(upper/β)^k)`.
///
/// For `k < 1` the cdf is log-convex on the bulk of the support, which makes
/// this a concrete IRFR test family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedWeibull<T> {
    upper: T,
    scale: T,
    shape: T,
    ln_p0: T,
    ln_norm: T,
}

impl<T: Real> ReflectedWeibull<T> {
    pub fn new(upper: T, scale: T, shape: T) -> Result<Self, DistributionError> {
        let upper = positive("upper", upper)?;
        let scale = positive("scale", scale)?;
        let shape = positive("shape", shape)?;
        let ln_p0 = -(upper / scale).powf(shape);
        // ln(1 - p0)
        let ln_norm = (-ln_p0.exp()).ln_1p();
        Ok(Self {
            upper,
            scale,
            shape,
            ln_p0,
            ln_norm,
        })
    }

    fn phi(&self, x: T) -> T {
        -((self.upper - x) / self.scale).powf(self.shape)
    }
}

impl<T: Real> Lifetime<T> for ReflectedWeibull<T> {
    fn describe(&self) -> String {
        format!(
            "reflectedweibull upper={} scale={} shape={}",
            self.upper, self.scale, self.shape
        )
    }

    fn support(&self) -> (T, T) {
        (T::zero(), self.upper)
    }

    fn cdf(&self, x: T) -> T {
        self.ln_cdf(x).exp()
    }

    fn ln_cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::neg_infinity();
        }
        if x >= self.upper {
            return T::zero();
        }
        let phi = self.phi(x);
        // ln(e^φ - p0) = φ + ln(1 - e^{ln p0 - φ})
        phi + (-(self.ln_p0 - phi).exp()).ln_1p() - self.ln_norm
    }

    fn sf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::one();
        }
        if x >= self.upper {
            return T::zero();
        }
        (-self.phi(x).exp_m1() / self.ln_norm.exp()).min(T::one())
    }

    fn pdf(&self, x: T) -> T {
        self.ln_pdf(x).exp()
    }

    fn ln_pdf(&self, x: T) -> T {
        if !(x > T::zero() && x < self.upper) {
            return T::neg_infinity();
        }
        let r = (self.upper - x) / self.scale;
        self.shape.ln() - self.scale.ln() + (self.shape - T::one()) * r.ln() + self.phi(x)
            - self.ln_norm
    }
}
