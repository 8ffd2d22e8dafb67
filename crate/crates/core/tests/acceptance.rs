//! Acceptance suite. Prints one status line per criterion and exits non-zero
//! if any criterion fails. Data-conditional criteria print SKIP when their
//! dataset is absent.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frailmix::config::parse_lifetime;
use frailmix::distributions::{Lifetime, MixingDistribution, ReflectedWeibull, SupportPredicate, Weibull};
use frailmix::inference::{Sample, CHI2_1_95};
use frailmix::mixture::{GammaClosedForm, MixtureKind, MixtureModel};
use frailmix::numerics::{
    integrate, ln_regularized_pair, minimize_1d, numeric_derivative, regularized_lower_incomplete_gamma,
    upper_incomplete_gamma, OptimConfig, QuadratureConfig,
};
use frailmix::reproduce::{reproduce_examples, scenario1, scenario2, CurveDump, ScenarioOptions};
use frailmix::{
    check_order, verify_theorem, AgeingClass, Direction, GridSpec, MonotonicityReport, OrderRelation, TheoremOutcome,
    TheoremSpec, WeibullParams, THEOREMS,
};

enum Status {
    Pass,
    Fail,
    Skip,
}

struct Line {
    id: u32,
    title: &'static str,
    status: Status,
    detail: String,
}

fn line(id: u32, title: &'static str, ok: bool, detail: String) -> Line {
    Line {
        id,
        title,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn load(name: &str) -> Option<Sample> {
    let path = data_file(name);
    path.exists()
        .then(|| Sample::from_csv_file(&path).expect("readable").expect("valid sample"))
}

fn within_rel(v: f64, target: f64, tol: f64) -> bool {
    (v / target - 1.0).abs() <= tol
}

fn witness(r: &MonotonicityReport) -> String {
    match r.witness {
        Some(w) => format!("x={:.4} t={:?}", w.x, w.t),
        None => "-".into(),
    }
}

// ---------------------------------------------------------------- 1

fn criterion1() -> Line {
    let start = Instant::now();
    let report = reproduce_examples().expect("examples run");
    let elapsed = start.elapsed().as_secs_f64();
    let mut notes = Vec::new();
    let mut ok = elapsed < 10.0;
    for c in &report.cases {
        let stated = c.stated_report.holds() && c.stated_report.worst_margin >= -1e-9;
        ok &= stated;
        if !stated {
            notes.push(format!(
                "{} '{}' {:?} at {} (theorem slot {} {:?})",
                c.example,
                c.stated,
                c.stated_report.verdict,
                witness(&c.stated_report),
                c.theorem.theorem,
                c.theorem.outcome
            ));
        }
    }
    let held = report.cases.iter().filter(|c| c.stated_report.holds()).count();
    line(
        1,
        "example regression",
        ok,
        format!(
            "{held}/{} stated ratios hold, {:.2}s{}{}",
            report.cases.len(),
            elapsed,
            if notes.is_empty() { "" } else { "; " },
            notes.join("; ")
        ),
    )
}

// ---------------------------------------------------------------- 2 and 8

struct Instance {
    baseline: Arc<dyn Lifetime<f64>>,
    mixing: MixingDistribution<f64>,
    grid: GridSpec,
}

fn baseline_for(cls: AgeingClass, rng: &mut ChaCha8Rng) -> (Arc<dyn Lifetime<f64>>, f64, f64) {
    use AgeingClass::*;
    match cls {
        Irfr => {
            let h = rng.random_range(1.0..5.0);
            let k = rng.random_range(0.5..0.8);
            let d = ReflectedWeibull::new(h, 1e-3 * h, k).unwrap();
            (Arc::new(d), 0.4 * h, 0.75 * h)
        }
        Dlr | Dfr | Imrl => {
            let beta = rng.random_range(0.5..2.0);
            let k = rng.random_range(0.3..0.85);
            (Arc::new(Weibull::with(beta, k).unwrap()), 0.05 * beta, 3.0 * beta)
        }
        Ilr | Ifr | Drfr | Dmrl | Imit => {
            let beta = rng.random_range(0.5..2.0);
            let k = rng.random_range(1.2..4.0);
            (Arc::new(Weibull::with(beta, k).unwrap()), 0.05 * beta, 3.0 * beta)
        }
    }
}

fn mixing_for(spec: &TheoremSpec, i: usize, rng: &mut ChaCha8Rng) -> MixingDistribution<f64> {
    let mrl = matches!(spec.relation, OrderRelation::MrlUp | OrderRelation::MrlDown);
    match spec.support {
        SupportPredicate::UnitInterval => {
            let lo_min = if mrl { 0.2 } else { 0.0 };
            let c = rng.random_range(lo_min..0.6);
            let d = rng.random_range(c + 0.1..=1.0);
            MixingDistribution::uniform(c, d).unwrap()
        }
        SupportPredicate::GeqOne => {
            if i.is_multiple_of(2) {
                MixingDistribution::uniform(1.0, rng.random_range(1.5..4.0)).unwrap()
            } else {
                MixingDistribution::truncated_gamma_from_a(rng.random_range(0.3..1.5)).unwrap()
            }
        }
    }
}

fn instance(spec: &TheoremSpec, i: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (baseline, lo, hi) = baseline_for(spec.hypothesis, &mut rng);
    let mixing = mixing_for(spec, i, &mut rng);
    Instance {
        baseline,
        mixing,
        grid: GridSpec::new(lo, hi, 64).unwrap(),
    }
}

struct SuiteResult {
    per_theorem: Vec<(&'static str, usize, usize, usize)>,
    failures: Vec<String>,
    implications: (usize, usize, Vec<String>),
    elapsed: f64,
}

const PER_THEOREM: usize = 50;

fn random_suite() -> SuiteResult {
    let start = Instant::now();
    let mut per_theorem = Vec::new();
    let mut failures = Vec::new();
    let (mut checked, mut consistent, mut bad) = (0usize, 0usize, Vec::new());
    for (ti, spec) in THEOREMS.iter().enumerate() {
        let (mut met, mut held) = (0, 0);
        for i in 0..PER_THEOREM {
            let inst = instance(spec, i, 1_000 * ti as u64 + i as u64);
            let r = verify_theorem(spec, inst.baseline.clone(), inst.mixing, &inst.grid)
                .unwrap_or_else(|e| panic!("{}#{i} {} / {}: {e}", spec.id, inst.baseline.describe(), inst.mixing.describe()));
            if r.outcome == TheoremOutcome::HypothesesNotMet {
                continue;
            }
            met += 1;
            if r.outcome == TheoremOutcome::Holds {
                held += 1;
            } else if failures.len() < 10 {
                let c = r.conclusion_report.as_ref().unwrap();
                failures.push(format!("{}#{i} {:?} at {}", spec.id, r.outcome, witness(c)));
            }
            // Shifted order holding strictly must imply its usual counterpart.
            let c = r.conclusion_report.as_ref().unwrap();
            if let (true, true, Some(usual)) = (c.holds(), c.strict, spec.relation.usual_counterpart()) {
                let m = MixtureModel::new(spec.kind, inst.baseline.clone(), inst.mixing);
                let u = if spec.mixture_larger {
                    check_order(&*inst.baseline, &m, usual, &inst.grid)
                } else {
                    check_order(&m, &*inst.baseline, usual, &inst.grid)
                }
                .expect("usual order check runs");
                checked += 1;
                if u.holds() {
                    consistent += 1;
                } else if bad.len() < 10 {
                    bad.push(format!("{}#{i} {} fails at {}", spec.id, usual, witness(&u)));
                }
            }
        }
        per_theorem.push((spec.id, PER_THEOREM, met, held));
    }
    SuiteResult {
        per_theorem,
        failures,
        implications: (checked, consistent, bad),
        elapsed: start.elapsed().as_secs_f64(),
    }
}

fn criterion2(s: &SuiteResult) -> Line {
    let met: usize = s.per_theorem.iter().map(|t| t.2).sum();
    let held: usize = s.per_theorem.iter().map(|t| t.3).sum();
    let total: usize = s.per_theorem.iter().map(|t| t.1).sum();
    let unmet: Vec<String> = s
        .per_theorem
        .iter()
        .filter(|t| t.2 < t.1)
        .map(|t| format!("{}:{}/{}", t.0, t.2, t.1))
        .collect();
    let ok = met > 0 && held == met && s.per_theorem.iter().all(|t| t.2 > 0) && s.elapsed < 120.0;
    line(
        2,
        "randomized theorem suite",
        ok,
        format!(
            "{held}/{met} hypothesis-met instances conclude (of {total} drawn; partial hypothesis match {}), {:.1}s{}{}",
            if unmet.is_empty() { "none".to_string() } else { unmet.join(" ") },
            s.elapsed,
            if s.failures.is_empty() { "" } else { "; failures: " },
            s.failures.join("; ")
        ),
    )
}

fn criterion8(s: &SuiteResult) -> Line {
    // Add the worked-example instances to the random set.
    let report = reproduce_examples().expect("examples run");
    let (mut checked, mut consistent, mut bad) = s.implications.clone();
    let grid = frailmix::reproduce::example_grid();
    let examples: [(&str, MixtureKind, &str, &str, bool, OrderRelation); 6] = [
        ("3.1", MixtureKind::Frailty, "gammapdf", "uniform lo=0 hi=1", true, OrderRelation::LrUp),
        ("3.2", MixtureKind::Frailty, "weibull scale=1 shape=3", "uniform lo=1 hi=3", false, OrderRelation::LrDown),
        ("3.3", MixtureKind::Frailty, "weibull scale=1 shape=2", "uniform lo=0 hi=1", true, OrderRelation::HrUp),
        ("3.4", MixtureKind::Frailty, "weibull scale=1 shape=0.5", "uniform lo=2 hi=5", false, OrderRelation::HrDown),
        (
            "4.1",
            MixtureKind::Resilience,
            "weibull scale=0.7071067811865476 shape=2",
            "uniform lo=2 hi=5",
            true,
            OrderRelation::RhUp,
        ),
        ("4.2", MixtureKind::Resilience, "weibull scale=1 shape=3", "uniform lo=0 hi=1", false, OrderRelation::RhUp),
    ];
    for (case, (id, kind, base, mix, baseline_first, rel)) in report.cases.iter().zip(examples) {
        assert_eq!(case.example, id);
        let b = parse_lifetime(base).unwrap();
        let m = MixtureModel::new(kind, b.clone(), frailmix::config::parse_mixing(mix).unwrap());
        let (x, y): (&dyn Lifetime<f64>, &dyn Lifetime<f64>) = if baseline_first { (&*b, &m) } else { (&m, &*b) };
        // The stated relation and the theorem slot's relation.
        let slot = TheoremSpec::find(&case.theorem.theorem).unwrap();
        let (sx, sy): (&dyn Lifetime<f64>, &dyn Lifetime<f64>) =
            if slot.mixture_larger { (&*b, &m) } else { (&m, &*b) };
        for (x, y, rel) in [(x, y, rel), (sx, sy, slot.relation)] {
            let r = check_order(x, y, rel, &grid).unwrap();
            let Some(usual) = rel.usual_counterpart() else { continue };
            if r.holds() && r.strict {
                checked += 1;
                let u = check_order(x, y, usual, &grid).unwrap();
                if u.holds() {
                    consistent += 1;
                } else {
                    bad.push(format!("example {id} {rel} => {usual} fails at {}", witness(&u)));
                }
            }
        }
    }
    line(
        8,
        "shifted implies usual",
        checked > 0 && checked == consistent,
        format!(
            "{consistent}/{checked} strict shifted holds have their usual order{}{}",
            if bad.is_empty() { "" } else { "; exceptions: " },
            bad.join("; ")
        ),
    )
}

// ---------------------------------------------------------------- 3

fn criterion3() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    let mut compared = 0usize;
    let mut undefined = 0usize;
    for _ in 0..5 {
        let a = rng.random_range(0.3..4.0);
        let beta = 10f64.powf(rng.random_range(-0.3..3.0));
        let k = rng.random_range(0.5..4.0);
        let p = WeibullParams::new(beta, k).unwrap();
        for kind in [MixtureKind::Frailty, MixtureKind::Resilience] {
            let closed = GammaClosedForm::new(kind, p, a).unwrap();
            let quad = MixtureModel::truncated_gamma_weibull(kind, p, a).unwrap();
            for i in 0..100 {
                let t = beta * (0.02 + 2.98 * i as f64 / 99.0);
                let pairs = [
                    ("sf", closed.try_ln_sf(t).unwrap(), quad.try_ln_sf(t).unwrap()),
                    ("cdf", closed.try_ln_cdf(t).unwrap(), quad.try_ln_cdf(t).unwrap()),
                    ("pdf", closed.try_ln_pdf(t).unwrap(), quad.try_ln_pdf(t).unwrap()),
                ];
                for (what, c, q) in pairs {
                    // |ln c - ln q| bounds the relative error of the values.
                    // Equal infinities (underflowed tails) agree exactly.
                    let d = if c == q { 0.0 } else { (c - q).abs() };
                    compared += 1;
                    if d.is_nan() {
                        undefined += 1;
                        continue;
                    }
                    if d > worst {
                        worst = d;
                        worst_at = format!("{kind:?} {what} a={a:.3} beta={beta:.3} k={k:.3} t={t:.4}");
                    }
                }
            }
        }
    }
    line(
        3,
        "closed form vs quadrature",
        worst <= 1e-7 && undefined == 0,
        format!("{compared} values, {undefined} undefined, worst relative gap {worst:.2e} ({worst_at})"),
    )
}

// ---------------------------------------------------------------- 4

fn criterion4() -> Line {
    let baselines = [
        "weibull scale=1 shape=2",
        "weibull scale=3 shape=0.7",
        "gammapdf shape=2 rate=1",
        "exponential rate=0.5",
    ];
    let mut worst: f64 = 0.0;
    for spec in baselines {
        let b = parse_lifetime(spec).unwrap();
        let one = MixingDistribution::degenerate(1.0).unwrap();
        let fr = MixtureModel::frailty(b.clone(), one);
        let rs = MixtureModel::resilience(b.clone(), one);
        for i in 0..200 {
            let t = 0.01 + 8.0 * i as f64 / 199.0;
            for d in [(fr.sf(t) - b.sf(t)).abs(), (rs.cdf(t) - b.cdf(t)).abs()] {
                // NaN must not be swallowed by f64::max.
                worst = if worst.is_nan() || d.is_nan() { f64::NAN } else { worst.max(d) };
            }
        }
    }
    line(
        4,
        "degenerate mixing identity",
        worst <= 1e-12,
        format!("max |sf* - sf|, |cdf* - cdf| = {worst:.2e} over 4 baselines x 200 points"),
    )
}

// ---------------------------------------------------------------- 5, 6, 7

fn check_dumped(dump: &CurveDump, expected: Direction) -> (bool, String) {
    let back = CurveDump::from_csv(&dump.to_csv()).expect("dump re-reads");
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, _) in &back.columns {
        let r = back.check(name, expected, 1e-9).expect("curve check runs");
        if !r.holds() {
            ok = false;
            notes.push(format!("{name} at {}", witness(&r)));
        }
    }
    (ok, notes.join(", "))
}

fn criterion5(leuk: Option<&Sample>) -> Line {
    let Some(s) = leuk else {
        return Line {
            id: 5,
            title: "scenario I (leukaemia)",
            status: Status::Skip,
            detail: "data/leukaemia.csv not present".into(),
        };
    };
    let r = scenario1(s, &ScenarioOptions::scenario1()).expect("scenario I runs");
    let p = r.fit.params;
    let beta_ok = within_rel(p.scale, 986.672, 0.005);
    let k_ok = within_rel(p.shape, 1.24044, 0.005);
    let ad_ok = (r.ad.statistic - 0.3616).abs() <= 0.02;
    let a_ok = within_rel(r.mixture_fit.a, 0.784, 0.02);
    let (curves_ok, curve_notes) = check_dumped(&r.curves, Direction::Decreasing);
    let disp = r
        .order_checks
        .iter()
        .find(|c| c.claim == "X <=_disp X*")
        .expect("dispersive check present");
    let disp_rev = r.order_checks.iter().find(|c| c.claim == "X* <=_disp X").unwrap();
    let ok = beta_ok && k_ok && ad_ok && a_ok && curves_ok && disp.report.holds();
    let mark = |b: bool| if b { "ok" } else { "FAIL" };
    line(
        5,
        "scenario I (leukaemia)",
        ok,
        format!(
            "beta={:.3} {} k={:.5} {} A2={:.4} {} a={:.4} {} (target 0.784; boundary={}, loglik {:.4} vs baseline {:.4}) curves {}{} X*>=disp X {} (margin {:.2e}; reverse X*<=disp X {:?})",
            p.scale,
            mark(beta_ok),
            p.shape,
            mark(k_ok),
            r.ad.statistic,
            mark(ad_ok),
            r.mixture_fit.a,
            mark(a_ok),
            r.mixture_fit.at_boundary,
            r.mixture_fit.loglik,
            r.mixture_fit.baseline_loglik,
            mark(curves_ok),
            if curve_notes.is_empty() { String::new() } else { format!(" [{curve_notes}]") },
            mark(disp.report.holds()),
            disp.report.worst_margin,
            disp_rev.report.verdict,
        ),
    )
}

fn criterion6(bear: Option<&Sample>) -> Line {
    let Some(s) = bear else {
        // Pipeline exercised on a synthetic stand-in; the criterion itself stays unevaluated.
        let p = WeibullParams::new(232.9, 3.0721).unwrap();
        let synth = frailmix::inference::simulate_resilience(p, 4.0558, 23, 6);
        let mut opts = ScenarioOptions::scenario2();
        opts.bootstrap.replicates = 1000;
        let r = scenario2(&synth, &opts).expect("scenario II runs");
        let (curves_ok, _) = check_dumped(&r.curves, Direction::Increasing);
        return Line {
            id: 6,
            title: "scenario II (ball bearings)",
            status: Status::Skip,
            detail: format!(
                "data/bearings.csv not present; synthetic n=23 pipeline: beta={:.1} k={:.3} a={:.3} curves increasing {}",
                r.fit.params.scale, r.fit.params.shape, r.mixture_fit.a, curves_ok
            ),
        };
    };
    let r = scenario2(s, &ScenarioOptions::scenario2()).expect("scenario II runs");
    let p = r.fit.params;
    let beta_ok = within_rel(p.scale, 232.9, 0.005);
    let k_ok = within_rel(p.shape, 3.0721, 0.005);
    let ad_ok = (r.ad.statistic - 0.1496).abs() <= 0.02;
    let a_ok = within_rel(r.mixture_fit.a, 4.0558, 0.02);
    let (curves_ok, notes) = check_dumped(&r.curves, Direction::Increasing);
    line(
        6,
        "scenario II (ball bearings)",
        beta_ok && k_ok && ad_ok && a_ok && curves_ok,
        format!(
            "beta={:.3} k={:.5} A2={:.4} a={:.4} curves increasing {curves_ok} {notes}",
            p.scale, p.shape, r.ad.statistic, r.mixture_fit.a
        ),
    )
}

fn criterion7(leuk: Option<&Sample>, bear: Option<&Sample>) -> Line {
    use frailmix::inference::{anderson_darling_weibull, weibull_mle, BootstrapOptions};
    let mut ok = true;
    let mut parts = Vec::new();
    let mut evaluated = 0;
    let sets = [
        ("leukaemia", leuk, 0.8852, (766.52, 1270.06), (0.973535, 1.58052)),
        ("bearings", bear, 0.99, (198.758, 272.906), (2.13732, 4.41572)),
    ];
    for (name, sample, p_target, scale_ci, shape_ci) in sets {
        let Some(s) = sample else {
            parts.push(format!("{name}: SKIP (data file not present)"));
            continue;
        };
        evaluated += 1;
        let fit = weibull_mle(s).unwrap();
        let ad = anderson_darling_weibull(s, fit.params, &BootstrapOptions::default()).unwrap();
        let p_ok = (ad.p_value - p_target).abs() <= 0.05;
        let ends = [
            (fit.scale_ci_95.lo, scale_ci.0),
            (fit.scale_ci_95.hi, scale_ci.1),
            (fit.shape_ci_95.lo, shape_ci.0),
            (fit.shape_ci_95.hi, shape_ci.1),
        ];
        let ci_ok = ends.iter().all(|(v, t)| within_rel(*v, *t, 0.10));
        ok &= p_ok && ci_ok;
        parts.push(format!(
            "{name}: p={:.4} (target {p_target}) cv={:.4} scale CI [{:.2}, {:.2}] shape CI [{:.4}, {:.4}] {}",
            ad.p_value,
            ad.critical_value,
            fit.scale_ci_95.lo,
            fit.scale_ci_95.hi,
            fit.shape_ci_95.lo,
            fit.shape_ci_95.hi,
            if p_ok && ci_ok { "ok" } else { "FAIL" }
        ));
    }
    Line {
        id: 7,
        title: "p-values and intervals (loose)",
        status: match (evaluated, ok) {
            (0, _) => Status::Skip,
            (_, true) => Status::Pass,
            (_, false) => Status::Fail,
        },
        detail: format!("{}; profile-likelihood cutoff chi2={CHI2_1_95}", parts.join("; ")),
    }
}

// ---------------------------------------------------------------- 9

fn criterion9() -> Line {
    let mut fails = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            fails.push(name.to_string());
        }
    };
    // Complement identity on a dense x grid.
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 5.0] {
        for i in 0..=1000 {
            let x = 50.0 * i as f64 / 1000.0;
            let (lp, lq): (f64, f64) = ln_regularized_pair(a, x).unwrap();
            let d = (lp.exp() + lq.exp() - 1.0).abs();
            worst = if worst.is_nan() || d.is_nan() { f64::NAN } else { worst.max(d) };
        }
    }
    check("complement identity", worst <= 1e-10);

    let cfg = QuadratureConfig::default();
    let close = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol * b.abs().max(1.0);
    check("zeta1(1,2)", close(upper_incomplete_gamma(1.0, 2.0).unwrap(), (-2.0f64).exp(), 1e-12));
    check("zeta1(2,0)", close(upper_incomplete_gamma(2.0, 0.0).unwrap(), 1.0, 1e-12));
    let oracle = integrate(|t: f64| t.powf(-0.5) * (-t).exp(), 1.0, f64::INFINITY, &cfg).unwrap();
    check("zeta1(0.5,1)", close(upper_incomplete_gamma(0.5, 1.0).unwrap(), oracle, 1e-8));
    check("zeta1(0.5,1) value", close(oracle, 0.278806, 1e-5));
    check(
        "zeta2(1,1)",
        close(regularized_lower_incomplete_gamma(1.0, 1.0).unwrap(), 1.0 - (-1.0f64).exp(), 1e-12),
    );
    check("zeta2(a,0)", regularized_lower_incomplete_gamma(3.0, 0.0).unwrap() == 0.0);
    let oracle = integrate(|t: f64| t * (-t).exp(), 0.0, 3.0, &cfg).unwrap();
    check("zeta2(2,3)", close(regularized_lower_incomplete_gamma(2.0, 3.0).unwrap(), oracle, 1e-8));
    check("zeta2(2,3) value", close(oracle, 0.800852, 1e-5));

    check("int x^2", close(integrate(|x: f64| x * x, 0.0, 1.0, &cfg).unwrap(), 1.0 / 3.0, 1e-9));
    check("int e^-x", close(integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, &cfg).unwrap(), 1.0, 1e-9));
    check(
        "int x e^-x",
        close(
            integrate(|x: f64| x * (-x).exp(), 0.0, f64::INFINITY, &cfg).unwrap(),
            upper_incomplete_gamma(2.0, 0.0).unwrap(),
            1e-9,
        ),
    );

    let opt = |lo, hi| OptimConfig::new(lo, hi, 1e-8, 500).unwrap();
    check("min (x-2)^2", (minimize_1d(|x: f64| (x - 2.0).powi(2), &opt(0.0, 5.0)).unwrap().0 - 2.0).abs() <= 1e-8);
    let grid_best = (0..=100_000)
        .map(|i| i as f64 * 1e-4)
        .min_by(|a, b| (-a * (-a).exp()).total_cmp(&(-b * (-b).exp())))
        .unwrap();
    let (xm, _) = minimize_1d(|x: f64| -x * (-x).exp(), &opt(0.0, 10.0)).unwrap();
    check("min -x e^-x", (xm - 1.0).abs() <= 1e-6 && (xm - grid_best).abs() <= 1e-4);
    check("min |x|", minimize_1d(|x: f64| x.abs(), &opt(-1.0, 3.0)).unwrap().0.abs() <= 1e-8);

    check("d x^2", (numeric_derivative(|x: f64| x * x, 3.0, 1e-5).unwrap() - 6.0).abs() < 1e-8);
    check("d e^x", (numeric_derivative(|x: f64| x.exp(), 0.0, 1e-6).unwrap() - 1.0).abs() < 1e-8);
    check("d ln x", (numeric_derivative(|x: f64| x.ln(), 2.0, 1e-6).unwrap() - 0.5).abs() < 1e-8);

    line(
        9,
        "numerics unit suite",
        fails.is_empty(),
        format!(
            "complement identity worst {worst:.2e}; {} oracle checks failed{}{}",
            fails.len(),
            if fails.is_empty() { "" } else { ": " },
            fails.join(", ")
        ),
    )
}

fn main() {
    let leuk = load("leukaemia.csv");
    let bear = load("bearings.csv");
    let suite = random_suite();
    let lines = vec![
        criterion1(),
        criterion2(&suite),
        criterion3(),
        criterion4(),
        criterion5(leuk.as_ref()),
        criterion6(bear.as_ref()),
        criterion7(leuk.as_ref(), bear.as_ref()),
        criterion8(&suite),
        criterion9(),
    ];
    let mut failed = 0;
    for l in &lines {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Skip => "SKIP",
        };
        println!("criterion {} [{tag}] {}: {}", l.id, l.title, l.detail);
    }
    println!("acceptance: {} pass, {failed} fail, {} skip", lines.iter().filter(|l| matches!(l.status, Status::Pass)).count(), lines.iter().filter(|l| matches!(l.status, Status::Skip)).count());
    if failed > 0 {
        std::process::exit(1);
    }
}
