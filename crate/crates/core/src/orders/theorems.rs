//! Theorem harness: hypothesis class on the baseline, support condition on
//! the mixing law, then the concluded order between mixture and baseline.
//!
//! Each conclusion is encoded as the ratio the corresponding argument
//! actually establishes. "(i)" parts conclude that the mixture is larger,
//! `B ≤_rel M`; "(ii)" parts conclude that the ratio runs the other way,
//! which is `M ≤_rel' B` with the shift moved to the other variable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_order, OrderRelation};
use crate::ageing::{classify, classify_all, AgeingClass};
use crate::distributions::{Lifetime, MixingDistribution, SupportPredicate};
use crate::mixture::{MixtureKind, MixtureModel};
use crate::monotone::{CheckError, GridSpec, MonotonicityReport, Verdict};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremSpec {
    pub id: &'static str,
    pub kind: MixtureKind,
    pub hypothesis: AgeingClass,
    pub support: SupportPredicate,
    pub relation: OrderRelation,
    /// `true`: conclusion is `baseline ≤_rel mixture`; `false`: `mixture ≤_rel baseline`.
    pub mixture_larger: bool,
    /// The ratio whose monotonicity the conclusion asserts.
    pub ratio: &'static str,
}

macro_rules! thm {
    ($id:expr, $kind:ident, $cls:ident, $sup:ident, $rel:ident, $larger:expr, $ratio:expr) => {
        TheoremSpec {
            id: $id,
            kind: MixtureKind::$kind,
            hypothesis: AgeingClass::$cls,
            support: SupportPredicate::$sup,
            relation: OrderRelation::$rel,
            mixture_larger: $larger,
            ratio: $ratio,
        }
    };
}

pub const THEOREMS: [TheoremSpec; 22] = [
    thm!("3.1i", Frailty, Ilr, UnitInterval, LrUp, true, "f*(x)/f(x+t) increasing"),
    thm!("3.1ii", Frailty, Dlr, GeqOne, LrDown, false, "f*(x)/f(x+t) decreasing"),
    thm!("3.2i", Frailty, Dlr, UnitInterval, LrDown, true, "f*(x+t)/f(x) increasing"),
    thm!("3.2ii", Frailty, Ilr, GeqOne, LrUp, false, "f*(x+t)/f(x) decreasing"),
    thm!("3.3i", Frailty, Ifr, UnitInterval, HrUp, true, "F̄*(x)/F̄(x+t) increasing"),
    thm!("3.3ii", Frailty, Dfr, GeqOne, HrDown, false, "F̄*(x)/F̄(x+t) decreasing"),
    thm!("3.4i", Frailty, Dfr, UnitInterval, HrDown, true, "F̄*(x+t)/F̄(x) increasing"),
    thm!("3.4ii", Frailty, Ifr, GeqOne, HrUp, false, "F̄*(x+t)/F̄(x) decreasing"),
    thm!("3.5i", Frailty, Imrl, UnitInterval, MrlUp, true, "∫_{x+t}F̄* / ∫_x F̄ increasing"),
    thm!("3.5ii", Frailty, Dmrl, GeqOne, MrlDown, false, "∫_{x+t}F̄* / ∫_x F̄ decreasing"),
    thm!("3.6i", Frailty, Dmrl, UnitInterval, MrlDown, true, "∫_x F̄* / ∫_{x+t}F̄ increasing"),
    thm!("3.6ii", Frailty, Imrl, GeqOne, MrlUp, false, "∫_x F̄* / ∫_{x+t}F̄ decreasing"),
    thm!("4.1i", Resilience, Ilr, GeqOne, LrUp, true, "g*(x)/g(x+t) increasing"),
    thm!("4.1ii", Resilience, Dlr, UnitInterval, LrDown, false, "g*(x)/g(x+t) decreasing"),
    thm!("4.2i", Resilience, Dlr, GeqOne, LrDown, true, "g*(x+t)/g(x) increasing"),
    thm!("4.2ii", Resilience, Ilr, UnitInterval, LrUp, false, "g*(x+t)/g(x) decreasing"),
    thm!("4.3i", Resilience, Drfr, GeqOne, RhUp, true, "G*(x)/G(x+t) increasing"),
    thm!("4.3ii", Resilience, Irfr, UnitInterval, RhDown, false, "G*(x)/G(x+t) decreasing"),
    thm!("4.4i", Resilience, Irfr, GeqOne, RhDown, true, "G*(x+t)/G(x) increasing"),
    thm!("4.4ii", Resilience, Drfr, UnitInterval, RhUp, false, "G*(x+t)/G(x) decreasing"),
    thm!("mit-i", Resilience, Imit, UnitInterval, MitUp, false, "∫_0^{x+t}G* / ∫_0^x G decreasing"),
    thm!("mit-ii", Resilience, Imit, GeqOne, MitUp, true, "∫_0^{x+t}G / ∫_0^x G* decreasing"),
];

impl TheoremSpec {
    pub fn find(id: &str) -> Option<&'static TheoremSpec> {
        let key = id.trim().to_ascii_lowercase();
        THEOREMS.iter().find(|t| t.id == key)
    }

    /// Human-readable conclusion, e.g. `X ≤_lr_up X*`.
    pub fn conclusion(&self) -> String {
        if self.mixture_larger {
            format!("X ≤_{} X*", self.relation)
        } else {
            format!("X* ≤_{} X", self.relation)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremOutcome {
    Holds,
    Fails,
    Inconclusive,
    HypothesesNotMet,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub conclusion: String,
    pub ratio: String,
    pub hypothesis: AgeingClass,
    pub hypothesis_report: MonotonicityReport,
    pub support: SupportPredicate,
    pub support_ok: bool,
    /// Classes the baseline was found to satisfy; filled in only when the
    /// stated hypothesis is not met, to show which slot the instance fits.
    pub matched_classes: Vec<AgeingClass>,
    pub conclusion_report: Option<MonotonicityReport>,
    pub outcome: TheoremOutcome,
}

pub fn verify_theorem<T: Real>(
    theorem: &TheoremSpec,
    baseline: Arc<dyn Lifetime<T>>,
    mixing: MixingDistribution<T>,
    grid: &GridSpec<T>,
) -> Result<TheoremReport, CheckError> {
    let hypothesis_report = classify(&*baseline, theorem.hypothesis, grid)?;
    let support_ok = mixing.satisfies(theorem.support);
    let mut report = TheoremReport {
        theorem: theorem.id.to_string(),
        conclusion: theorem.conclusion(),
        ratio: theorem.ratio.to_string(),
        hypothesis: theorem.hypothesis,
        hypothesis_report,
        support: theorem.support,
        support_ok,
        matched_classes: Vec::new(),
        conclusion_report: None,
        outcome: TheoremOutcome::HypothesesNotMet,
    };
    if !(report.hypothesis_report.holds() && support_ok) {
        if !report.hypothesis_report.holds() {
            report.matched_classes = classify_all(&*baseline, grid)?
                .into_iter()
                .filter(|(_, r)| r.holds())
                .map(|(c, _)| c)
                .collect();
        }
        return Ok(report);
    }
    let mixture = MixtureModel::new(theorem.kind, baseline.clone(), mixing);
    let conclusion = if theorem.mixture_larger {
        check_order(&*baseline, &mixture, theorem.relation, grid)?
    } else {
        check_order(&mixture, &*baseline, theorem.relation, grid)?
    };
    report.outcome = match conclusion.verdict {
        Verdict::Holds => TheoremOutcome::Holds,
        Verdict::Fails => TheoremOutcome::Fails,
        Verdict::Inconclusive => TheoremOutcome::Inconclusive,
    };
    report.conclusion_report = Some(conclusion);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Weibull;

    #[test]
    fn ids_are_unique_and_findable() {
        for t in &THEOREMS {
            assert_eq!(TheoremSpec::find(t.id).unwrap().id, t.id);
        }
        assert!(TheoremSpec::find("3.7i").is_none());
    }

    #[test]
    fn ifr_uniform_frailty() {
        let base: Arc<dyn Lifetime<f64>> = Arc::new(Weibull::with(1.0, 2.0).unwrap());
        let grid = GridSpec::with_shifts(0.05, 4.0, 64, vec![0.1, 0.5, 1.0, 2.0]).unwrap();
        let r = verify_theorem(
            TheoremSpec::find("3.3i").unwrap(),
            base,
            MixingDistribution::uniform(0.0, 1.0).unwrap(),
            &grid,
        )
        .unwrap();
        assert_eq!(r.outcome, TheoremOutcome::Holds);
    }

    #[test]
    fn unmet_hypothesis_reports_matches() {
        let base: Arc<dyn Lifetime<f64>> = Arc::new(Weibull::with(1.0, 3.0).unwrap());
        let grid = GridSpec::with_shifts(0.05, 2.0, 32, vec![0.1, 0.5]).unwrap();
        let r = verify_theorem(
            TheoremSpec::find("3.1ii").unwrap(),
            base,
            MixingDistribution::uniform(1.0, 3.0).unwrap(),
            &grid,
        )
        .unwrap();
        assert_eq!(r.outcome, TheoremOutcome::HypothesesNotMet);
        assert!(r.matched_classes.contains(&AgeingClass::Ilr));
        assert!(r.conclusion_report.is_none());
    }
}
