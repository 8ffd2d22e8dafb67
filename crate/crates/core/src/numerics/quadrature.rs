//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Semi-infinite ranges are folded onto `(0, 1]` with `u = 1 / (1 + (t - lo))`
//! before subdivision; doubly infinite ranges are split at zero.

use serde::Serialize;

use super::NumericsError;
use crate::real::Real;

/// Tolerances and work budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> QuadratureConfig<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_subdivisions: usize) -> Result<Self, NumericsError> {
        if !(abs_tol > T::zero()) {
            return Err(NumericsError::Domain {
                what: "abs_tol must be positive",
                value: abs_tol.to_f64_lossy(),
            });
        }
        if !(rel_tol > T::zero()) {
            return Err(NumericsError::Domain {
                what: "rel_tol must be positive",
                value: rel_tol.to_f64_lossy(),
            });
        }
        if max_subdivisions == 0 {
            return Err(NumericsError::Domain {
                what: "max_subdivisions must be at least 1",
                value: 0.0,
            });
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }

    /// Tighter preset used for distribution tables and mixture integrals,
    /// whose values feed log-ratio monotonicity checks.
    pub fn tight() -> Self {
        let floor = T::epsilon() * T::of(100.0);
        Self {
            abs_tol: T::of(1e-300).max(T::min_positive_value()),
            rel_tol: T::of(1e-11).max(floor),
            max_subdivisions: 2_000,
        }
    }
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        let floor = T::epsilon() * T::of(100.0);
        Self {
            abs_tol: T::of(1e-9).max(floor),
            rel_tol: T::of(1e-9).max(floor),
            max_subdivisions: 1_000,
        }
    }
}

/// Value plus the error bound reported by the adaptive rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub abs_error: T,
    pub subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn eval<T: Real, F: Fn(T) -> T>(f: &F, x: T) -> Result<T, NumericsError> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(NumericsError::NonFinite {
            routine: "integrate",
            at: x.to_f64_lossy(),
        })
    }
}

fn kronrod15<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Result<Segment<T>, NumericsError> {
    let half = T::of(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let fc = eval(f, center)?;
    let mut kronrod = fc * T::of(WGK[7]);
    let mut gauss = fc * T::of(WG[3]);
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half_len * T::of(XGK[j]);
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::of(WGK[j]);
        kronrod += w * (f1 + f2);
        abs_sum += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += T::of(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = kronrod * half;
    let mut asc = T::of(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        asc += T::of(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half_len.abs();
    let value = kronrod * half_len;
    let abs_sum = abs_sum * scale;
    let asc = asc * scale;
    let mut error = ((kronrod - gauss) * half_len).abs();
    if asc != T::zero() && error != T::zero() {
        let ratio = (T::of(200.0) * error / asc).powf(T::of(1.5));
        error = asc * ratio.min(T::one());
    }
    let round_off = T::of(50.0) * T::epsilon() * abs_sum;
    if abs_sum > T::min_positive_value() / (T::of(50.0) * T::epsilon()) {
        error = error.max(round_off);
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error,
    })
}

fn adaptive<T: Real, F: Fn(T) -> T>(
    f: &F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>, NumericsError> {
    let mut segments = vec![kronrod15(f, lo, hi)?];
    loop {
        let value: T = segments.iter().map(|s| s.value).sum();
        let error: T = segments.iter().map(|s| s.error).sum();
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(Estimate {
                value,
                abs_error: error,
                subdivisions: segments.len(),
            });
        }
        if segments.len() >= cfg.max_subdivisions {
            return Err(NumericsError::NonConvergence {
                routine: "integrate",
                iterations: segments.len(),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, s)| {
                if s.error > be {
                    (i, s.error)
                } else {
                    (bi, be)
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = T::of(0.5) * (seg.lo + seg.hi);
        if !(mid > seg.lo && mid < seg.hi) {
            // Interval collapsed to adjacent floats; the tolerance is not reachable.
            return Err(NumericsError::NonConvergence {
                routine: "integrate",
                iterations: segments.len() + 1,
            });
        }
        segments.push(kronrod15(f, seg.lo, mid)?);
        segments.push(kronrod15(f, mid, seg.hi)?);
    }
}

/// Integral of `f` over `[lo, hi]` with its error estimate. Either bound may be infinite.
pub fn integrate_detailed<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>, NumericsError> {
    if lo.is_nan() || hi.is_nan() {
        return Err(NumericsError::Domain {
            what: "integration bound is NaN",
            value: f64::NAN,
        });
    }
    if lo == hi {
        return Ok(Estimate {
            value: T::zero(),
            abs_error: T::zero(),
            subdivisions: 0,
        });
    }
    if hi < lo {
        let e = integrate_detailed(f, hi, lo, cfg)?;
        return Ok(Estimate {
            value: -e.value,
            ..e
        });
    }
    let one = T::one();
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => adaptive(&f, lo, hi, cfg),
        (true, false) => {
            let g = |u: T| {
                let t = lo + (one - u) / u;
                f(t) / (u * u)
            };
            adaptive(&g, T::zero(), one, cfg)
        }
        (false, true) => {
            let g = |u: T| {
                let t = hi - (one - u) / u;
                f(t) / (u * u)
            };
            adaptive(&g, T::zero(), one, cfg)
        }
        (false, false) => {
            let left = |u: T| {
                let t = -(one - u) / u;
                f(t) / (u * u)
            };
            let right = |u: T| {
                let t = (one - u) / u;
                f(t) / (u * u)
            };
            let l = adaptive(&left, T::zero(), one, cfg)?;
            let r = adaptive(&right, T::zero(), one, cfg)?;
            Ok(Estimate {
                value: l.value + r.value,
                abs_error: l.abs_error + r.abs_error,
                subdivisions: l.subdivisions + r.subdivisions,
            })
        }
    }
}

/// Integral of `f` over `[lo, hi]`; `hi` (or `lo`) may be infinite.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T, NumericsError> {
    integrate_detailed(f, lo, hi, cfg).map(|e| e.value)
}

/// Sum of integrals over consecutive pieces `[p0, p1], [p1, p2], ...`.
///
/// Used when the integrand is concentrated near one end of a wide range, so
/// that the first Kronrod pass cannot miss it.
pub fn integrate_pieces<T: Real, F: Fn(T) -> T>(
    f: F,
    breakpoints: &[T],
    cfg: &QuadratureConfig<T>,
) -> Result<T, NumericsError> {
    let mut total = T::zero();
    let mut retry = Vec::new();
    for w in breakpoints.windows(2) {
        match integrate(&f, w[0], w[1], cfg) {
            Ok(v) => total += v,
            Err(NumericsError::NonConvergence { .. }) => retry.push((w[0], w[1])),
            Err(e) => return Err(e),
        }
    }
    // Pieces that could not meet the tolerance relative to themselves only
    // need to meet it relative to the whole integral.
    if !retry.is_empty() {
        let loose = QuadratureConfig {
            abs_tol: cfg.abs_tol.max(cfg.rel_tol * total.abs() / T::of_usize(retry.len())),
            ..*cfg
        };
        for (a, b) in retry {
            total += integrate(&f, a, b, &loose)?;
        }
    }
    Ok(total)
}
