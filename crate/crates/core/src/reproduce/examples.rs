use std::sync::Arc;

use serde::Serialize;

use super::ReproduceError;
use crate::distributions::{Lifetime, MixingDistribution, PdfDistribution, Weibull};
use crate::mixture::{MixtureKind, MixtureModel};
use crate::monotone::{GridSpec, MonotonicityReport};
use crate::orders::{check_order, verify_theorem, OrderRelation, TheoremReport, TheoremSpec};

#[derive(Debug, Clone, Serialize)]
pub struct ExampleCase {
    pub example: String,
    /// Ratio statement as written for the instance.
    pub stated: String,
    pub stated_report: MonotonicityReport,
    /// Theorem slot the instance satisfies, with its full verification.
    pub theorem: TheoremReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExamplesReport {
    pub cases: Vec<ExampleCase>,
    /// Degenerate(1) mixing against its own baseline, usual orders both ways.
    pub degenerate_sanity: Vec<MonotonicityReport>,
}

impl ExamplesReport {
    pub fn all_hold(&self) -> bool {
        self.cases.iter().all(|c| c.stated_report.holds() && c.theorem.outcome == crate::orders::TheoremOutcome::Holds)
            && self.degenerate_sanity.iter().all(|r| r.holds())
    }
}

/// x in [0.05, 4] at 128 points, t in {0.1, 0.5, 1, 2}.
pub fn example_grid() -> GridSpec<f64> {
    GridSpec::with_shifts(0.05, 4.0, 128, vec![0.1, 0.5, 1.0, 2.0]).expect("static grid is valid")
}

struct Instance {
    example: &'static str,
    kind: MixtureKind,
    baseline: Arc<dyn Lifetime<f64>>,
    mixing: MixingDistribution<f64>,
    stated: &'static str,
    /// `true`: stated ratio is `check_order(B, M, rel)`.
    baseline_first: bool,
    relation: OrderRelation,
    slot: &'static str,
}

fn instances() -> Result<Vec<Instance>, ReproduceError> {
    use MixtureKind::*;
    use OrderRelation::*;
    let u = MixingDistribution::uniform;
    Ok(vec![
        Instance {
            example: "3.1",
            kind: Frailty,
            baseline: Arc::new(PdfDistribution::gamma(2.0, 1.0)?),
            mixing: u(0.0, 1.0)?,
            stated: "f*(x)/f(x+t) increasing",
            baseline_first: true,
            relation: LrUp,
            slot: "3.1i",
        },
        Instance {
            example: "3.2",
            kind: Frailty,
            baseline: Arc::new(Weibull::with(1.0, 3.0)?),
            mixing: u(1.0, 3.0)?,
            stated: "f*(x)/f(x+t) decreasing",
            baseline_first: false,
            relation: LrDown,
            slot: "3.2ii",
        },
        Instance {
            example: "3.3",
            kind: Frailty,
            baseline: Arc::new(Weibull::with(1.0, 2.0)?),
            mixing: u(0.0, 1.0)?,
            stated: "Fbar*(x)/Fbar(x+t) increasing",
            baseline_first: true,
            relation: HrUp,
            slot: "3.3i",
        },
        Instance {
            example: "3.4",
            kind: Frailty,
            baseline: Arc::new(Weibull::with(1.0, 0.5)?),
            mixing: u(2.0, 5.0)?,
            stated: "Fbar*(x)/Fbar(x+t) decreasing",
            baseline_first: false,
            relation: HrDown,
            slot: "3.3ii",
        },
        Instance {
            example: "4.1",
            kind: Resilience,
            baseline: Arc::new(Weibull::with(std::f64::consts::FRAC_1_SQRT_2, 2.0)?),
            mixing: u(2.0, 5.0)?,
            stated: "G*(x)/G(x+t) increasing",
            baseline_first: true,
            relation: RhUp,
            slot: "4.3i",
        },
        Instance {
            example: "4.2",
            kind: Resilience,
            baseline: Arc::new(Weibull::with(1.0, 3.0)?),
            mixing: u(0.0, 1.0)?,
            stated: "G*(x+t)/G(x) decreasing",
            baseline_first: false,
            relation: RhUp,
            slot: "4.4ii",
        },
    ])
}

/// Runs the six worked instances plus a degenerate-mixing sanity set.
pub fn reproduce_examples() -> Result<ExamplesReport, ReproduceError> {
    let grid = example_grid();
    let mut cases = Vec::new();
    for inst in instances()? {
        let mixture = MixtureModel::new(inst.kind, inst.baseline.clone(), inst.mixing);
        let stated_report = if inst.baseline_first {
            check_order(&*inst.baseline, &mixture, inst.relation, &grid)?
        } else {
            check_order(&mixture, &*inst.baseline, inst.relation, &grid)?
        };
        let spec = TheoremSpec::find(inst.slot).expect("slot exists");
        let theorem = verify_theorem(spec, inst.baseline.clone(), inst.mixing, &grid)?;
        cases.push(ExampleCase {
            example: inst.example.to_string(),
            stated: inst.stated.to_string(),
            stated_report,
            theorem,
        });
    }

    let base: Arc<dyn Lifetime<f64>> = Arc::new(Weibull::with(1.0, 2.0)?);
    let mut degenerate_sanity = Vec::new();
    for kind in [MixtureKind::Frailty, MixtureKind::Resilience] {
        let m = MixtureModel::new(kind, base.clone(), MixingDistribution::degenerate(1.0)?);
        for rel in [OrderRelation::Lr, OrderRelation::Hr, OrderRelation::Rh, OrderRelation::Mrl, OrderRelation::Disp] {
            degenerate_sanity.push(check_order(&*base, &m, rel, &grid)?);
            degenerate_sanity.push(check_order(&m, &*base, rel, &grid)?);
        }
    }
    Ok(ExamplesReport {
        cases,
        degenerate_sanity,
    })
}
