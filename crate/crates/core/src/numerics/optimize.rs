//! Golden-section minimization, central differences and bisection.

use serde::Serialize;

use super::NumericsError;
use crate::real::Real;

/// Bracket and stopping rule for [`minimize_1d`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimConfig<T> {
    pub bracket_lo: T,
    pub bracket_hi: T,
    pub x_tol: T,
    pub max_iters: usize,
}

impl<T: Real> OptimConfig<T> {
    pub fn new(bracket_lo: T, bracket_hi: T, x_tol: T, max_iters: usize) -> Result<Self, NumericsError> {
        if !(bracket_lo < bracket_hi) || !bracket_lo.is_finite() || !bracket_hi.is_finite() {
            return Err(NumericsError::Domain {
                what: "bracket must be finite with lo < hi",
                value: (bracket_hi - bracket_lo).to_f64_lossy(),
            });
        }
        if !(x_tol > T::zero()) {
            return Err(NumericsError::Domain {
                what: "x_tol must be positive",
                value: x_tol.to_f64_lossy(),
            });
        }
        if max_iters == 0 {
            return Err(NumericsError::Domain {
                what: "max_iters must be at least 1",
                value: 0.0,
            });
        }
        Ok(Self {
            bracket_lo,
            bracket_hi,
            x_tol,
            max_iters,
        })
    }

    /// Bracket with a tolerance relative to its width.
    pub fn bracket(lo: T, hi: T) -> Result<Self, NumericsError> {
        let tol = ((hi - lo).abs() * T::of(1e-10)).max(T::epsilon() * T::of(16.0));
        Self::new(lo, hi, tol, 500)
    }
}

/// Golden-section search for a local minimum of `f` on the configured bracket.
///
/// Returns `(argmin, f(argmin))`. NaN values are treated as `+inf` so that a
/// partially undefined objective steers the search away instead of stalling it.
pub fn minimize_1d<T: Real, F: Fn(T) -> T>(f: F, cfg: &OptimConfig<T>) -> Result<(T, T), NumericsError> {
    let eval = |x: T| {
        let v = f(x);
        if v.is_nan() {
            T::infinity()
        } else {
            v
        }
    };
    let inv_phi = (T::of(5.0).sqrt() - T::one()) / T::of(2.0);
    let mut a = cfg.bracket_lo;
    let mut b = cfg.bracket_hi;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    for _ in 0..cfg.max_iters {
        if (b - a).abs() <= cfg.x_tol {
            let fa = eval(a);
            let fb = eval(b);
            // Report the best point seen in the final bracket, endpoints included.
            let best = [(c, fc), (d, fd), (a, fa), (b, fb)]
                .into_iter()
                .fold((c, fc), |acc, p| if p.1 < acc.1 { p } else { acc });
            if !best.1.is_finite() {
                return Err(NumericsError::NonFinite {
                    routine: "minimize_1d",
                    at: best.0.to_f64_lossy(),
                });
            }
            return Ok(best);
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    Err(NumericsError::NonConvergence {
        routine: "minimize_1d",
        iterations: cfg.max_iters,
    })
}

/// Default central-difference step `1e-6 * max(1, |x|)`.
pub fn default_step<T: Real>(x: T) -> T {
    T::of(1e-6) * x.abs().max(T::one())
}

/// Central difference `(f(x+h) - f(x-h)) / 2h`.
pub fn numeric_derivative<T: Real, F: Fn(T) -> T>(f: F, x: T, h: T) -> Result<T, NumericsError> {
    if !(h > T::zero()) {
        return Err(NumericsError::Domain {
            what: "step must be positive",
            value: h.to_f64_lossy(),
        });
    }
    let hi = f(x + h);
    let lo = f(x - h);
    if !hi.is_finite() || !lo.is_finite() {
        return Err(NumericsError::Domain {
            what: "function not evaluable at stencil point",
            value: x.to_f64_lossy(),
        });
    }
    Ok((hi - lo) / (h + h))
}

/// Root of `f` on `[lo, hi]` by bisection; requires a sign change.
pub fn bisect<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    x_tol: T,
    max_iters: usize,
) -> Result<T, NumericsError> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(NumericsError::NonFinite {
            routine: "bisect",
            at: if fa.is_nan() { a } else { b }.to_f64_lossy(),
        });
    }
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::Domain {
            what: "bisection bracket has no sign change",
            value: (fa * fb).to_f64_lossy(),
        });
    }
    for _ in 0..max_iters {
        let m = a + (b - a) / T::of(2.0);
        if (b - a).abs() <= x_tol || m <= a || m >= b {
            return Ok(m);
        }
        let fm = f(m);
        if fm.is_nan() {
            return Err(NumericsError::NonFinite {
                routine: "bisect",
                at: m.to_f64_lossy(),
            });
        }
        if fm == T::zero() {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(NumericsError::NonConvergence {
        routine: "bisect",
        iterations: max_iters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_vertex() {
        let cfg = OptimConfig::new(0.0, 5.0, 1e-8, 200).unwrap();
        let (x, v) = minimize_1d(|x: f64| (x - 2.0).powi(2), &cfg).unwrap();
        assert!((x - 2.0).abs() <= 1e-8);
        assert!(v < 1e-15);
    }

    #[test]
    fn x_exp_minus_x_matches_grid_scan() {
        let f = |x: f64| -x * (-x).exp();
        let grid_best = (0..=100_000)
            .map(|i| i as f64 * 1e-4)
            .fold((0.0, f64::INFINITY), |acc, x| if f(x) < acc.1 { (x, f(x)) } else { acc });
        let cfg = OptimConfig::new(0.0, 10.0, 1e-8, 200).unwrap();
        let (x, _) = minimize_1d(f, &cfg).unwrap();
        assert!((x - grid_best.0).abs() < 2e-4);
        assert!((x - 1.0).abs() < 1e-6);
    }

    #[test]
    fn kink() {
        let cfg = OptimConfig::new(-1.0, 3.0, 1e-9, 200).unwrap();
        let (x, _) = minimize_1d(|x: f64| x.abs(), &cfg).unwrap();
        assert!(x.abs() <= 1e-9);
    }

    #[test]
    fn budget_exhaustion() {
        let cfg = OptimConfig::new(0.0, 5.0, 1e-12, 3).unwrap();
        assert!(minimize_1d(|x: f64| x * x, &cfg).is_err());
    }

    #[test]
    fn config_checks() {
        assert!(OptimConfig::new(1.0_f64, 1.0, 1e-6, 10).is_err());
        assert!(OptimConfig::new(0.0_f64, 1.0, 0.0, 10).is_err());
    }

    #[test]
    fn derivatives() {
        let d = numeric_derivative(|x: f64| x * x, 3.0, 1e-5).unwrap();
        assert!((d - 6.0).abs() < 1e-8);
        let d = numeric_derivative(|x: f64| x.exp(), 0.0, default_step(0.0)).unwrap();
        assert!((d - 1.0).abs() < 1e-8);
        let d = numeric_derivative(|x: f64| x.ln(), 2.0, default_step(2.0)).unwrap();
        assert!((d - 0.5).abs() < 1e-8);
        assert!(numeric_derivative(|x: f64| x.ln(), 0.0, 1e-3).is_err());
    }

    #[test]
    fn bisection_root() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-13);
        assert!(bisect(|x: f64| x * x + 1.0, 0.0, 2.0, 1e-14, 200).is_err());
    }
}
