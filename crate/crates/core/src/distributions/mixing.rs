use serde::{Deserialize, Serialize};

use super::{positive, DistributionError};
use crate::numerics::{
    integrate_pieces, ln_gamma, ln_regularized_pair, NumericsError, QuadratureConfig,
};
use crate::real::Real;

/// Shape `α` and rate `b` of a gamma law, density `∝ λ^{α-1} e^{-bλ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams<T> {
    pub shape: T,
    pub rate: T,
}

impl<T: Real> GammaParams<T> {
    pub fn new(shape: T, rate: T) -> Result<Self, DistributionError> {
        Ok(Self {
            shape: positive("shape", shape)?,
            rate: positive("rate", rate)?,
        })
    }

    /// `α = b = 1/a²`.
    pub fn from_a(a: T) -> Result<Self, DistributionError> {
        let a = positive("a", a)?;
        let v = T::one() / (a * a);
        Self::new(v, v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportPredicate {
    /// support ⊆ (0, 1]
    UnitInterval,
    /// support ⊆ [1, ∞)
    GeqOne,
}

/// Law of the frailty (Λ) or resilience (Ω) variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MixingDistribution<T> {
    Gamma(GammaParams<T>),
    TruncatedGamma { params: GammaParams<T>, lower: T },
    Uniform { lo: T, hi: T },
    Degenerate { value: T },
}

impl<T: Real> MixingDistribution<T> {
    pub fn gamma(shape: T, rate: T) -> Result<Self, DistributionError> {
        Ok(Self::Gamma(GammaParams::new(shape, rate)?))
    }

    pub fn truncated_gamma(shape: T, rate: T, lower: T) -> Result<Self, DistributionError> {
        if !(lower >= T::zero() && lower.is_finite()) {
            return Err(DistributionError::InvalidParameter {
                name: "lower",
                value: lower.to_f64_lossy(),
            });
        }
        Ok(Self::TruncatedGamma {
            params: GammaParams::new(shape, rate)?,
            lower,
        })
    }

    /// Gamma(1/a², 1/a²) conditioned on `[1, ∞)`.
    pub fn truncated_gamma_from_a(a: T) -> Result<Self, DistributionError> {
        Ok(Self::TruncatedGamma {
            params: GammaParams::from_a(a)?,
            lower: T::one(),
        })
    }

    pub fn uniform(lo: T, hi: T) -> Result<Self, DistributionError> {
        if !(lo >= T::zero() && lo < hi && hi.is_finite()) {
            return Err(DistributionError::InvalidParameter {
                name: "uniform bounds",
                value: (hi - lo).to_f64_lossy(),
            });
        }
        Ok(Self::Uniform { lo, hi })
    }

    pub fn degenerate(value: T) -> Result<Self, DistributionError> {
        Ok(Self::Degenerate {
            value: positive("value", value)?,
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Gamma(p) => format!("gamma shape={} rate={}", p.shape, p.rate),
            Self::TruncatedGamma { params, lower } => format!(
                "truncgamma shape={} rate={} lower={}",
                params.shape, params.rate, lower
            ),
            Self::Uniform { lo, hi } => format!("uniform lo={lo} hi={hi}"),
            Self::Degenerate { value } => format!("degenerate value={value}"),
        }
    }

    /// Closure of the support, `(lo, hi)`.
    pub fn support(&self) -> (T, T) {
        match *self {
            Self::Gamma(_) => (T::zero(), T::infinity()),
            Self::TruncatedGamma { lower, .. } => (lower, T::infinity()),
            Self::Uniform { lo, hi } => (lo, hi),
            Self::Degenerate { value } => (value, value),
        }
    }

    /// Support contained in `(0, 1]` (a zero-probability endpoint at 0 is allowed).
    pub fn support_in_unit_interval(&self) -> bool {
        match *self {
            Self::Gamma(_) | Self::TruncatedGamma { .. } => false,
            Self::Uniform { lo, hi } => lo >= T::zero() && hi <= T::one(),
            Self::Degenerate { value } => value > T::zero() && value <= T::one(),
        }
    }

    pub fn support_geq_one(&self) -> bool {
        self.support().0 >= T::one()
    }

    pub fn satisfies(&self, predicate: SupportPredicate) -> bool {
        match predicate {
            SupportPredicate::UnitInterval => self.support_in_unit_interval(),
            SupportPredicate::GeqOne => self.support_geq_one(),
        }
    }

    pub fn mean(&self) -> T {
        match *self {
            Self::Gamma(p) => p.shape / p.rate,
            Self::TruncatedGamma { params, lower } => {
                // E[Λ] = (α/b) Q(α+1, bL) / Q(α, bL)
                let x = params.rate * lower;
                let num = ln_regularized_pair(params.shape + T::one(), x).map(|v| v.1);
                let den = ln_regularized_pair(params.shape, x).map(|v| v.1);
                match (num, den) {
                    (Ok(n), Ok(d)) => params.shape / params.rate * (n - d).exp(),
                    _ => T::nan(),
                }
            }
            Self::Uniform { lo, hi } => (lo + hi) / T::of(2.0),
            Self::Degenerate { value } => value,
        }
    }

    /// Log density on the support (continuous variants only).
    pub fn ln_density(&self, lambda: T) -> T {
        match *self {
            Self::Gamma(p) => gamma_ln_density(p, lambda, T::zero()),
            Self::TruncatedGamma { params, lower } => {
                if lambda < lower {
                    return T::neg_infinity();
                }
                let ln_q = ln_regularized_pair(params.shape, params.rate * lower)
                    .map(|v| v.1)
                    .unwrap_or(T::nan());
                gamma_ln_density(params, lambda, ln_q)
            }
            Self::Uniform { lo, hi } => {
                if lambda >= lo && lambda <= hi {
                    -(hi - lo).ln()
                } else {
                    T::neg_infinity()
                }
            }
            Self::Degenerate { .. } => T::nan(),
        }
    }

    /// `ln E[Λ^p exp(Λ·ell)]` for `ell ≤ 0`, `p ∈ {0, 1}`.
    ///
    /// The integrand is rescaled by its maximum and split at breakpoints
    /// around its mode, so that very negative `ell` (tiny baseline survival)
    /// neither underflows nor hides the mass from the first Kronrod pass.
    pub fn ln_expect_exp(&self, ell: T, p: i32, cfg: &QuadratureConfig<T>) -> Result<T, NumericsError> {
        check_exponent(ell)?;
        let pf = T::of(p as f64);
        if let Self::Degenerate { value } = *self {
            return Ok(pf * value.ln() + value * ell);
        }
        if ell == T::neg_infinity() {
            // Continuous laws carry no atom at 0.
            return Ok(T::neg_infinity());
        }
        let (lo, hi) = self.support();
        let (mode, width) = self.tilted_mode(ell, pf);
        // Integrand is λ^power e^{-slope λ} times a constant. It is written in
        // s = λ - mode so that `ell · λ` for huge |ell| does not cancel against
        // the peak value.
        let (power, slope, ln_norm) = match *self {
            Self::Gamma(g) => (g.shape - T::one() + pf, g.rate - ell, gamma_ln_norm(g, T::zero())),
            Self::TruncatedGamma { params, lower } => {
                let ln_d0 = ln_regularized_pair(params.shape, params.rate * lower)?.1;
                (params.shape - T::one() + pf, params.rate - ell, gamma_ln_norm(params, ln_d0))
            }
            Self::Uniform { lo, hi } => (pf, -ell, -(hi - lo).ln()),
            Self::Degenerate { .. } => unreachable!(),
        };
        let centred = mode > T::zero();
        let shift = if centred {
            ln_norm + power * mode.ln() - slope * mode
        } else {
            ln_norm
        };
        let rel_log = |s: T| {
            let ln_pow = if power == T::zero() {
                T::zero()
            } else if centred {
                power * (s / mode).ln_1p()
            } else {
                power * s.ln()
            };
            ln_pow - slope * s
        };
        let breaks: Vec<T> = breakpoints(lo, hi, mode, width).into_iter().map(|b| b - mode).collect();
        let value = integrate_pieces(
            |s: T| {
                let v = rel_log(s).exp();
                if v.is_nan() {
                    T::zero()
                } else {
                    v
                }
            },
            &breaks,
            cfg,
        )?;
        Ok(value.ln() + shift)
    }

    /// `E[1 - exp(Λ·ell)]` for `ell ≤ 0`, free of cancellation when `ell` is tiny.
    pub fn expect_one_minus_exp(&self, ell: T, cfg: &QuadratureConfig<T>) -> Result<T, NumericsError> {
        check_exponent(ell)?;
        if let Self::Degenerate { value } = *self {
            return Ok(-(value * ell).exp_m1());
        }
        if ell == T::neg_infinity() {
            return Ok(T::one());
        }
        let (lo, hi) = self.support();
        let (mode, width) = self.tilted_mode(T::zero(), T::zero());
        let ln_d0 = match *self {
            Self::TruncatedGamma { params, lower } => {
                ln_regularized_pair(params.shape, params.rate * lower)?.1
            }
            _ => T::zero(),
        };
        let density = |lambda: T| match *self {
            Self::Gamma(g) | Self::TruncatedGamma { params: g, .. } => {
                gamma_ln_density(g, lambda, ln_d0).exp()
            }
            Self::Uniform { lo, hi } => T::one() / (hi - lo),
            Self::Degenerate { .. } => unreachable!(),
        };
        let breaks = breakpoints(lo, hi, mode, width);
        integrate_pieces(
            |lambda: T| -(lambda * ell).exp_m1() * density(lambda),
            &breaks,
            cfg,
        )
    }

    /// Mode and spread of `λ^p e^{λ ell} h(λ)` on the support.
    fn tilted_mode(&self, ell: T, pf: T) -> (T, T) {
        let (lo, hi) = self.support();
        match *self {
            Self::Gamma(g) | Self::TruncatedGamma { params: g, .. } => {
                let rate = g.rate - ell;
                let power = g.shape - T::one() + pf;
                let raw = if power > T::zero() { power / rate } else { lo };
                let mode = raw.max(lo);
                let width = power.max(T::one()).sqrt() / rate;
                (mode, width)
            }
            Self::Uniform { .. } => {
                let width = if ell < T::zero() {
                    (T::one() / -ell).min(hi - lo)
                } else {
                    hi - lo
                };
                let mode = if ell < T::zero() { lo } else { hi };
                (mode, width)
            }
            Self::Degenerate { value } => (value, T::zero()),
        }
    }
}

fn check_exponent<T: Real>(ell: T) -> Result<(), NumericsError> {
    if ell > T::zero() || ell.is_nan() {
        return Err(NumericsError::Domain {
            what: "mixture exponent must be non-positive",
            value: ell.to_f64_lossy(),
        });
    }
    Ok(())
}

fn gamma_ln_norm<T: Real>(g: GammaParams<T>, ln_mass: T) -> T {
    g.shape * g.rate.ln() - ln_gamma(g.shape) - ln_mass
}

fn gamma_ln_density<T: Real>(g: GammaParams<T>, lambda: T, ln_mass: T) -> T {
    if lambda <= T::zero() {
        return T::neg_infinity();
    }
    g.shape * g.rate.ln() - ln_gamma(g.shape) + (g.shape - T::one()) * lambda.ln()
        - g.rate * lambda
        - ln_mass
}

fn breakpoints<T: Real>(lo: T, hi: T, mode: T, width: T) -> Vec<T> {
    let mut pts = vec![lo];
    if width > T::zero() && width.is_finite() {
        for m in [-16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0, 64.0] {
            let x = mode + width * T::of(m);
            if x > lo && x < hi {
                pts.push(x);
            }
        }
    }
    pts.push(hi);
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::tight()
    }

    #[test]
    fn support_predicates() {
        let u01 = MixingDistribution::uniform(0.0_f64, 1.0).unwrap();
        assert!(u01.support_in_unit_interval());
        assert!(!u01.support_geq_one());
        let u13 = MixingDistribution::uniform(1.0_f64, 3.0).unwrap();
        assert!(u13.satisfies(SupportPredicate::GeqOne));
        let g = MixingDistribution::gamma(4.0_f64, 4.0).unwrap();
        assert!(!g.support_geq_one());
        assert!(!g.support_in_unit_interval());
        let t = MixingDistribution::truncated_gamma_from_a(0.784_f64).unwrap();
        assert!(t.support_geq_one());
        assert!(MixingDistribution::degenerate(1.0_f64).unwrap().support_in_unit_interval());
        assert!(MixingDistribution::degenerate(1.0_f64).unwrap().support_geq_one());
    }

    #[test]
    fn gamma_laplace_transform() {
        // E[e^{-Λs}] = (b/(b+s))^α
        let m = MixingDistribution::gamma(1.7_f64, 0.6).unwrap();
        for s in [0.0, 0.1, 2.0, 50.0, 3000.0] {
            let want = 1.7 * (0.6_f64 / (0.6 + s)).ln();
            let got = m.ln_expect_exp(-s, 0, &cfg()).unwrap();
            assert!((got - want).abs() < 1e-10, "s={s}: {got} vs {want}");
            // E[Λ e^{-Λs}] = α b^α / (b+s)^{α+1}
            let want1 = 1.7_f64.ln() + 1.7 * 0.6_f64.ln() - 2.7 * (0.6 + s as f64).ln();
            let got1 = m.ln_expect_exp(-s, 1, &cfg()).unwrap();
            assert!((got1 - want1).abs() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn uniform_mixture_scalar_integral() {
        let m = MixingDistribution::uniform(0.0_f64, 1.0).unwrap();
        let v = m.ln_expect_exp(-1.0, 0, &cfg()).unwrap().exp();
        assert!((v - (1.0 - (-1.0_f64).exp())).abs() < 1e-12);
        let c = m.expect_one_minus_exp(-1e-9, &cfg()).unwrap();
        // ε/2 - ε²/6 + O(ε³)
        let want = 0.5e-9 - 1e-18 / 6.0;
        assert!((c - want).abs() < 1e-12 * want);
    }

    #[test]
    fn truncated_mean_and_mass() {
        let m = MixingDistribution::truncated_gamma(2.0_f64, 1.5, 1.0).unwrap();
        let mass = m.ln_expect_exp(0.0, 0, &cfg()).unwrap();
        assert!(mass.abs() < 1e-11);
        let mean = m.ln_expect_exp(0.0, 1, &cfg()).unwrap().exp();
        assert!((mean - m.mean()).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(MixingDistribution::uniform(0.5_f64, 0.5).is_err());
        assert!(MixingDistribution::degenerate(0.0_f64).is_err());
        assert!(MixingDistribution::gamma(1.0_f64, -1.0).is_err());
        assert!(MixingDistribution::truncated_gamma(1.0_f64, 1.0, -1.0).is_err());
    }
}
