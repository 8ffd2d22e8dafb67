//! Shifted and usual stochastic orders, their pointwise consequences, and the
//! dispersive order.
//!
//! Every ratio relation `X ≤_rel Y` is normalized to
//! `ln φ_Y(x + s_Y) - ln φ_X(x + s_X)` increasing in `x`, where at most one
//! of the shifts is `t` and `φ` is the density, survival function, cdf, or
//! one of the integrated tails.

mod theorems;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::Lifetime;
use crate::monotone::{scan, CheckError, Direction, GridSpec, MonotonicityReport, Profile, Verdict, Witness};
use crate::numerics::{default_step, numeric_derivative};
use crate::real::{linspace, Real};

pub use theorems::{verify_theorem, TheoremOutcome, TheoremReport, TheoremSpec, THEOREMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderRelation {
    LrUp,
    LrDown,
    HrUp,
    HrDown,
    RhUp,
    RhDown,
    MrlUp,
    MrlDown,
    MitUp,
    MitDown,
    Lr,
    Hr,
    Rh,
    Mrl,
    Disp,
}

/// Which variable carries the shift `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shifted {
    X,
    Y,
    Neither,
}

impl OrderRelation {
    pub const ALL: [OrderRelation; 15] = [
        OrderRelation::LrUp,
        OrderRelation::LrDown,
        OrderRelation::HrUp,
        OrderRelation::HrDown,
        OrderRelation::RhUp,
        OrderRelation::RhDown,
        OrderRelation::MrlUp,
        OrderRelation::MrlDown,
        OrderRelation::MitUp,
        OrderRelation::MitDown,
        OrderRelation::Lr,
        OrderRelation::Hr,
        OrderRelation::Rh,
        OrderRelation::Mrl,
        OrderRelation::Disp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderRelation::LrUp => "lr_up",
            OrderRelation::LrDown => "lr_down",
            OrderRelation::HrUp => "hr_up",
            OrderRelation::HrDown => "hr_down",
            OrderRelation::RhUp => "rh_up",
            OrderRelation::RhDown => "rh_down",
            OrderRelation::MrlUp => "mrl_up",
            OrderRelation::MrlDown => "mrl_down",
            OrderRelation::MitUp => "mit_up",
            OrderRelation::MitDown => "mit_down",
            OrderRelation::Lr => "lr",
            OrderRelation::Hr => "hr",
            OrderRelation::Rh => "rh",
            OrderRelation::Mrl => "mrl",
            OrderRelation::Disp => "disp",
        }
    }

    fn definition(self) -> Option<(Profile, Shifted)> {
        use OrderRelation::*;
        Some(match self {
            LrUp => (Profile::Pdf, Shifted::X),
            LrDown => (Profile::Pdf, Shifted::Y),
            HrUp => (Profile::Sf, Shifted::X),
            HrDown => (Profile::Sf, Shifted::Y),
            RhUp => (Profile::Cdf, Shifted::X),
            RhDown => (Profile::Cdf, Shifted::Y),
            // ∫_{x+t}^∞ Ḡ / ∫_x^∞ F̄ for the up order
            MrlUp => (Profile::TailIntegral, Shifted::Y),
            MrlDown => (Profile::TailIntegral, Shifted::X),
            // ∫_0^{x+t} F / ∫_0^x G decreasing for the up order
            MitUp => (Profile::HeadIntegral, Shifted::X),
            MitDown => (Profile::HeadIntegral, Shifted::Y),
            Lr => (Profile::Pdf, Shifted::Neither),
            Hr => (Profile::Sf, Shifted::Neither),
            Rh => (Profile::Cdf, Shifted::Neither),
            Mrl => (Profile::TailIntegral, Shifted::Neither),
            Disp => return None,
        })
    }

    pub fn is_shifted(self) -> bool {
        matches!(self.definition(), Some((_, Shifted::X | Shifted::Y)))
    }

    /// Usual order implied by a shifted one (none for the mit orders).
    pub fn usual_counterpart(self) -> Option<OrderRelation> {
        use OrderRelation::*;
        match self {
            LrUp | LrDown => Some(Lr),
            HrUp | HrDown => Some(Hr),
            RhUp | RhDown => Some(Rh),
            MrlUp | MrlDown => Some(Mrl),
            _ => None,
        }
    }

    /// Same ratio with the shift moved to the other variable.
    pub fn swapped(self) -> OrderRelation {
        use OrderRelation::*;
        match self {
            LrUp => LrDown,
            LrDown => LrUp,
            HrUp => HrDown,
            HrDown => HrUp,
            RhUp => RhDown,
            RhDown => RhUp,
            MrlUp => MrlDown,
            MrlDown => MrlUp,
            MitUp => MitDown,
            MitDown => MitUp,
            other => other,
        }
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderRelation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        OrderRelation::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| format!("unknown order relation '{s}'"))
    }
}

/// `(X, Y, rel)`: is `X ≤_rel Y` on the grid?
pub fn check_order<T: Real>(
    x: &dyn Lifetime<T>,
    y: &dyn Lifetime<T>,
    rel: OrderRelation,
    grid: &GridSpec<T>,
) -> Result<MonotonicityReport, CheckError> {
    grid.validate()?;
    let Some((profile, shifted)) = rel.definition() else {
        return check_dispersive(x, y, &default_u_grid(), grid.slack);
    };
    let xs = grid.xs();
    let subject = format!("{} {} {}", x.describe(), rel, y.describe());
    if shifted == Shifted::Neither {
        let fx = profile.ln_series(x, &xs, T::zero());
        let fy = profile.ln_series(y, &xs, T::zero());
        let row: Vec<T> = fy.iter().zip(&fx).map(|(a, b)| *a - *b).collect();
        let mut r = scan(subject, &xs, &[T::zero()], &[row], Direction::Increasing, grid.slack)?;
        if let Some(w) = r.witness.as_mut() {
            w.t = None;
        }
        return Ok(r);
    }
    let fixed = match shifted {
        Shifted::X => profile.ln_series(y, &xs, T::zero()),
        _ => profile.ln_series(x, &xs, T::zero()),
    };
    let rows: Vec<Vec<T>> = grid
        .t_values
        .iter()
        .map(|&t| match shifted {
            Shifted::X => {
                let fx = profile.ln_series(x, &xs, t);
                fixed.iter().zip(&fx).map(|(a, b)| *a - *b).collect()
            }
            _ => {
                let fy = profile.ln_series(y, &xs, t);
                fy.iter().zip(&fixed).map(|(a, b)| *a - *b).collect()
            }
        })
        .collect();
    scan(subject, &xs, &grid.t_values, &rows, Direction::Increasing, grid.slack)
}

/// Quantity compared by a consequence check: the derivative of `ln φ`.
fn psi<T: Real>(profile: Profile, d: &dyn Lifetime<T>, t: T) -> Option<T> {
    let v = match profile {
        Profile::Pdf => numeric_derivative(|u| d.ln_pdf(u), t, default_step(t)).ok()?,
        Profile::Sf => -d.hazard(t)?,
        Profile::Cdf => d.reversed_hazard(t)?,
        Profile::TailIntegral => -T::one() / d.mrl(t)?,
        Profile::HeadIntegral => T::one() / d.mit(t)?,
    };
    if v.is_finite() {
        Some(v)
    } else {
        None
    }
}

/// Pointwise comparison implied by `X ≤_rel Y`:
/// `ψ_Y(t_Y) ≥ ψ_X(t_X)` with `t_X ≥ t_Y` when X carries the shift, `t_Y ≥ t_X`
/// when Y does, and `t_X = t_Y` for the usual orders. `ψ` is `f'/f`, `-r`,
/// `r̃`, `-1/m` or `1/mit` for the lr, hr, rh, mrl and mit families.
///
/// The witness reports `x = t_X`, `t = t_Y`.
pub fn check_consequence<T: Real>(
    x: &dyn Lifetime<T>,
    y: &dyn Lifetime<T>,
    rel: OrderRelation,
    grid: &GridSpec<T>,
) -> Result<MonotonicityReport, CheckError> {
    grid.validate()?;
    let Some((profile, shifted)) = rel.definition() else {
        return Err(CheckError::InvalidGrid("dispersive order has no consequence check".into()));
    };
    let ts = linspace(grid.x_lo, grid.x_hi, 32);
    let px: Vec<Option<T>> = ts.iter().map(|&t| psi(profile, x, t)).collect();
    let py: Vec<Option<T>> = ts.iter().map(|&t| psi(profile, y, t)).collect();
    let usable = px.iter().zip(&py).filter(|(a, b)| a.is_some() && b.is_some()).count();
    if usable < crate::monotone::MIN_USABLE_POINTS {
        return Err(CheckError::InsufficientGrid {
            usable,
            t: 0.0,
        });
    }
    let skipped = px.iter().chain(&py).filter(|v| v.is_none()).count();
    // Derivatives of quadrature-evaluated log densities carry more noise.
    let rel_tol = match profile {
        Profile::Pdf => T::of(1e-6),
        _ => grid.slack.max(T::of(1e-8)),
    };
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut failed = false;
    let mut strict = false;
    let mut pairs = 0usize;
    for (i, &tx) in ts.iter().enumerate() {
        for (j, &ty) in ts.iter().enumerate() {
            let admissible = match shifted {
                Shifted::X => i >= j,
                Shifted::Y => j >= i,
                Shifted::Neither => i == j,
            };
            let (Some(a), Some(b)) = (px[i], py[j]) else { continue };
            if !admissible {
                continue;
            }
            pairs += 1;
            let scale = a.abs().max(b.abs()).max(T::one());
            let margin = (b - a) / scale;
            if margin < -rel_tol {
                failed = true;
            }
            if margin > rel_tol {
                strict = true;
            }
            let m = margin.to_f64_lossy();
            if m < worst {
                worst = m;
                witness = Some(Witness {
                    x: tx.to_f64_lossy(),
                    t: Some(ty.to_f64_lossy()),
                });
            }
        }
    }
    let skipped_fraction = skipped as f64 / (2 * ts.len()) as f64;
    let verdict = if failed {
        Verdict::Fails
    } else if skipped_fraction > crate::monotone::MAX_SKIP_FRACTION {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    };
    Ok(MonotonicityReport {
        subject: format!("consequence of {} {} {}", x.describe(), rel, y.describe()),
        verdict,
        worst_margin: worst,
        witness: if failed { witness } else { None },
        skipped_fraction,
        strict,
        pairs,
    })
}

/// One row of [`check_implication_chain`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationEntry {
    pub shifted: OrderRelation,
    pub shifted_verdict: Verdict,
    pub strict: bool,
    pub usual: OrderRelation,
    pub usual_verdict: Option<Verdict>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub entries: Vec<ImplicationEntry>,
    pub consistent: bool,
}

/// For each shifted lr/hr/rh/mrl relation that holds strictly, the usual
/// counterpart must hold too.
pub fn check_implication_chain<T: Real>(
    x: &dyn Lifetime<T>,
    y: &dyn Lifetime<T>,
    grid: &GridSpec<T>,
) -> Result<ImplicationReport, CheckError> {
    let mut entries = Vec::new();
    for rel in OrderRelation::ALL {
        let Some(usual) = rel.usual_counterpart() else { continue };
        let shifted = check_order(x, y, rel, grid)?;
        let mut entry = ImplicationEntry {
            shifted: rel,
            shifted_verdict: shifted.verdict,
            strict: shifted.strict,
            usual,
            usual_verdict: None,
            consistent: true,
        };
        if shifted.holds() && shifted.strict {
            let u = check_order(x, y, usual, grid)?;
            entry.usual_verdict = Some(u.verdict);
            entry.consistent = u.holds();
        }
        entries.push(entry);
    }
    let consistent = entries.iter().all(|e| e.consistent);
    Ok(ImplicationReport { entries, consistent })
}

/// `u = 0.01, 0.02, ..., 0.99`.
pub fn default_u_grid<T: Real>() -> Vec<T> {
    (1..=99).map(|i| T::of_usize(i) / T::of(100.0)).collect()
}

/// `X ≤_disp Y`: `G⁻¹(u) - F⁻¹(u)` nondecreasing on `us`.
pub fn check_dispersive<T: Real>(
    x: &dyn Lifetime<T>,
    y: &dyn Lifetime<T>,
    us: &[T],
    slack: T,
) -> Result<MonotonicityReport, CheckError> {
    if us.len() < crate::monotone::MIN_USABLE_POINTS {
        return Err(CheckError::InvalidGrid(format!("{} probabilities", us.len())));
    }
    if us.windows(2).any(|w| !(w[0] < w[1])) || us.iter().any(|u| !(*u > T::zero() && *u < T::one())) {
        return Err(CheckError::InvalidGrid("probabilities must increase inside (0, 1)".into()));
    }
    let mut gaps = Vec::with_capacity(us.len());
    let mut scale = T::one();
    for &u in us {
        let qx = x.quantile(u)?;
        let qy = y.quantile(u)?;
        scale = scale.max(qx.abs()).max(qy.abs());
        gaps.push(qy - qx);
    }
    // Compare in units of the largest quantile so the slack is relative.
    let row: Vec<T> = gaps.iter().map(|g| *g / scale).collect();
    let mut r = scan(
        format!("{} disp {}", x.describe(), y.describe()),
        us,
        &[T::zero()],
        &[row],
        Direction::Increasing,
        slack,
    )?;
    if let Some(w) = r.witness.as_mut() {
        w.t = None;
    }
    Ok(r)
}
