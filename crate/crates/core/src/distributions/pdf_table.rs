use std::fmt;
use std::sync::Arc;

use super::{DistributionError, Lifetime};
use crate::numerics::{integrate, QuadratureConfig};
use crate::real::Real;

type Density<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A lifetime given only by its density. The cdf and sf come from cumulative
/// integrals over a fixed knot table built at construction, plus one short
/// quadrature between the nearest knot and the query point.
#[derive(Clone)]
pub struct PdfDistribution<T> {
    label: String,
    density: Density<T>,
    lo: T,
    hi: T,
    knots: Vec<T>,
    // head[i] = ∫_lo^{knots[i]} f, tail[i] = ∫_{knots[i]}^hi f, both before normalization.
    head: Vec<T>,
    tail: Vec<T>,
    mass: T,
    quad: QuadratureConfig<T>,
}

impl<T: Real> fmt::Debug for PdfDistribution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PdfDistribution")
            .field("label", &self.label)
            .field("support", &(self.lo, self.hi))
            .field("knots", &self.knots.len())
            .field("mass", &self.mass)
            .finish()
    }
}

const KNOT_MULTIPLES: [f64; 12] = [
    0.0, 0.0625, 0.125, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0,
];

impl<T: Real> PdfDistribution<T> {
    /// `scale` places the knot table; pick something near the bulk of the mass.
    /// Fails if the density does not integrate to 1 within 1e-6.
    pub fn new<F>(label: impl Into<String>, density: F, lo: T, hi: T, scale: T) -> Result<Self, DistributionError>
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        if !(lo.is_finite() && lo < hi) {
            return Err(DistributionError::InvalidParameter {
                name: "support",
                value: (hi - lo).to_f64_lossy(),
            });
        }
        let scale = super::positive("scale", scale)?;
        let quad = QuadratureConfig::tight();
        let mut knots: Vec<T> = KNOT_MULTIPLES.iter().map(|&m| lo + scale * T::of(m)).collect();
        let mut m = T::of(8.0);
        while m <= T::of(4096.0) {
            knots.push(lo + scale * m);
            knots.push(lo + scale * m * T::of(1.5));
            m *= T::of(2.0);
        }
        knots.retain(|&x| x < hi);
        if hi.is_finite() {
            knots.push(hi);
        }
        let pieces: Vec<T> = knots
            .windows(2)
            .map(|w| integrate(&density, w[0], w[1], &quad))
            .collect::<Result<_, _>>()?;
        let last = *knots.last().expect("knot table is non-empty");
        let beyond = if hi.is_finite() {
            T::zero()
        } else {
            integrate(&density, last, hi, &quad)?
        };
        let mut head = vec![T::zero(); knots.len()];
        for i in 1..knots.len() {
            head[i] = head[i - 1] + pieces[i - 1];
        }
        let mut tail = vec![T::zero(); knots.len()];
        tail[knots.len() - 1] = beyond;
        for i in (0..knots.len() - 1).rev() {
            tail[i] = tail[i + 1] + pieces[i];
        }
        let mass = head[knots.len() - 1] + beyond;
        if !((mass - T::one()).abs() <= T::of(1e-6)) {
            return Err(DistributionError::Normalization {
                mass: mass.to_f64_lossy(),
            });
        }
        Ok(Self {
            label: label.into(),
            density: Arc::new(density),
            lo,
            hi,
            knots,
            head,
            tail,
            mass,
            quad,
        })
    }

    /// Gamma density `b^α x^{α-1} e^{-bx} / Γ(α)`, evaluated through the table.
    pub fn gamma(shape: T, rate: T) -> Result<Self, DistributionError> {
        let shape = super::positive("shape", shape)?;
        let rate = super::positive("rate", rate)?;
        let ln_norm = shape * rate.ln() - crate::numerics::ln_gamma(shape);
        let density = move |x: T| {
            if x <= T::zero() {
                if shape == T::one() {
                    rate
                } else if shape < T::one() {
                    T::infinity()
                } else {
                    T::zero()
                }
            } else {
                (ln_norm + (shape - T::one()) * x.ln() - rate * x).exp()
            }
        };
        Self::new(
            format!("gammapdf shape={shape} rate={rate}"),
            density,
            T::zero(),
            T::infinity(),
            shape.max(T::one()) / rate,
        )
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `(F(x), F̄(x))`, the smaller one integrated directly, the other its complement.
    fn split(&self, x: T) -> (T, T) {
        if x <= self.lo {
            return (T::zero(), T::one());
        }
        if x >= self.hi {
            return (T::one(), T::zero());
        }
        let i = self.knots.partition_point(|&k| k <= x) - 1;
        let f = &*self.density;
        let below = self.head[i] + integrate(f, self.knots[i], x, &self.quad).unwrap_or(T::nan());
        let cdf = below / self.mass;
        if cdf <= T::of(0.5) {
            return (cdf, T::one() - cdf);
        }
        let sf = if i + 1 < self.knots.len() {
            (self.tail[i + 1] + integrate(f, x, self.knots[i + 1], &self.quad).unwrap_or(T::nan())) / self.mass
        } else {
            integrate(f, x, self.hi, &self.quad).unwrap_or(T::nan()) / self.mass
        };
        (T::one() - sf, sf)
    }
}

impl<T: Real> Lifetime<T> for PdfDistribution<T> {
    fn describe(&self) -> String {
        self.label.clone()
    }

    fn support(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    fn cdf(&self, x: T) -> T {
        self.split(x).0
    }

    fn sf(&self, x: T) -> T {
        self.split(x).1
    }

    fn pdf(&self, x: T) -> T {
        if x < self.lo || x > self.hi {
            return T::zero();
        }
        (self.density)(x) / self.mass
    }
}
