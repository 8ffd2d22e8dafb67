use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use frailmix::config::{parse_lifetime, parse_mixing};
use frailmix::inference::{
    anderson_darling_weibull, fit_frailty_a, fit_resilience_a, qq_data, weibull_mle, BootstrapNull,
    BootstrapOptions, Sample,
};
use frailmix::reproduce::{example_grid, reproduce_examples, scenario1, scenario2, CurveDump, ScenarioOptions};
use frailmix::{
    check_consequence, check_order, classify, classify_all, verify_theorem, AgeingClass, GridSpec, OrderRelation,
    TheoremOutcome, TheoremSpec, Verdict, WeibullParams,
};

use crate::args::{BaselineArgs, BootstrapArgs, Command, Format, GridArgs, NullArg, Output, Target};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_ERROR: u8 = 3;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command produced, before it is written anywhere.
struct Outcome {
    name: String,
    status: &'static str,
    exit: u8,
    report: Value,
    curves: Option<CurveDump>,
}

fn verdict_status(v: Verdict) -> (&'static str, u8) {
    match v {
        Verdict::Holds => ("holds", EXIT_OK),
        Verdict::Fails => ("fails", EXIT_FAILS),
        Verdict::Inconclusive => ("inconclusive", EXIT_INCONCLUSIVE),
    }
}

fn theorem_status(o: TheoremOutcome) -> (&'static str, u8) {
    match o {
        TheoremOutcome::Holds => ("holds", EXIT_OK),
        TheoremOutcome::Fails => ("fails", EXIT_FAILS),
        TheoremOutcome::Inconclusive => ("inconclusive", EXIT_INCONCLUSIVE),
        TheoremOutcome::HypothesesNotMet => ("hypotheses_not_met", EXIT_FAILS),
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn load(path: &Path) -> Result<Sample> {
    let sample = Sample::from_csv_file(path).with_context(|| format!("reading {}", path.display()))?;
    sample.with_context(|| format!("parsing {}", path.display()))
}

fn baseline(sample: &Sample, b: &BaselineArgs) -> Result<WeibullParams> {
    match (b.scale, b.shape) {
        (Some(scale), Some(shape)) => Ok(WeibullParams::new(scale, shape)?),
        _ => Ok(weibull_mle(sample)?.params),
    }
}

fn bootstrap(b: &BootstrapArgs) -> BootstrapOptions {
    BootstrapOptions {
        replicates: b.replicates,
        seed: b.seed,
        null: match b.null {
            NullArg::Fixed => BootstrapNull::Fixed,
            NullArg::Refit => BootstrapNull::Refit,
        },
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("{what}: '{v}' is not a number")))
        .collect()
}

fn parse_range(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lo, hi, n] = parts.as_slice() else {
        bail!("--grid expects x_lo,x_hi,n; got '{s}'");
    };
    Ok((
        lo.parse().with_context(|| format!("--grid: bad x_lo '{lo}'"))?,
        hi.parse().with_context(|| format!("--grid: bad x_hi '{hi}'"))?,
        n.parse().with_context(|| format!("--grid: bad n '{n}'"))?,
    ))
}

/// Explicit `--grid`/`--t`, else x in [0.05, 4] at 128 points with t in {0.1, 0.5, 1, 2}.
fn grid(g: &GridArgs) -> Result<GridSpec> {
    let t = g.t.as_deref().map(|t| parse_list(t, "--t")).transpose()?;
    let spec = match (&g.grid, t) {
        (None, None) => example_grid(),
        (None, Some(t)) => GridSpec::with_shifts(0.05, 4.0, 128, t)?,
        (Some(r), t) => {
            let (lo, hi, n) = parse_range(r)?;
            match t {
                Some(t) => GridSpec::with_shifts(lo, hi, n, t)?,
                None => GridSpec::new(lo, hi, n)?,
            }
        }
    };
    Ok(spec.with_slack(g.slack)?)
}

/// Rejects `--format csv|svg` for commands that produce no curves, before any work.
fn check_format(command: &Command) -> Result<()> {
    let (format, curves) = match command {
        Command::Qq { output, .. } => (output.format, true),
        Command::Reproduce { target, output, .. } => (output.format, *target != Target::Examples),
        Command::FitBaseline { output, .. }
        | Command::AdTest { output, .. }
        | Command::FitFrailty { output, .. }
        | Command::FitResilience { output, .. }
        | Command::Classify { output, .. }
        | Command::CheckOrder { output, .. }
        | Command::VerifyTheorem { output, .. } => (output.format, false),
    };
    if format != Format::Json && !curves {
        bail!("--format {format:?} is only available for qq and reproduce scenario1|scenario2");
    }
    Ok(())
}

pub fn run(command: Command) -> Result<u8> {
    check_format(&command)?;
    let (outcome, output) = execute(command)?;
    emit(&outcome, &output)?;
    Ok(outcome.exit)
}

fn execute(command: Command) -> Result<(Outcome, Output)> {
    Ok(match command {
        Command::FitBaseline { data, output } => {
            let sample = load(&data.data)?;
            let fit = weibull_mle(&sample)?;
            (ok("fit-baseline", to_value(&fit)?), output)
        }
        Command::AdTest {
            data,
            baseline: b,
            bootstrap: bs,
            output,
        } => {
            let sample = load(&data.data)?;
            let params = baseline(&sample, &b)?;
            let ad = anderson_darling_weibull(&sample, params, &bootstrap(&bs))?;
            let report = json!({ "params": params, "ad": ad });
            (ok("ad-test", report), output)
        }
        Command::Qq {
            data,
            baseline: b,
            output,
        } => {
            let sample = load(&data.data)?;
            let params = baseline(&sample, &b)?;
            let pairs = qq_data(&sample, params)?;
            let mut dump = CurveDump::new(pairs.iter().map(|p| p.0).collect())
                .with_meta("command", "qq")
                .with_meta("data", &sample.label)
                .with_meta("baseline", format!("weibull scale={} shape={}", params.scale, params.shape));
            dump.push("empirical", pairs.iter().map(|p| p.1).collect());
            dump.push("theoretical", pairs.iter().map(|p| p.0).collect());
            let report = json!({ "params": params, "pairs": pairs });
            let mut o = ok("qq", report);
            o.curves = Some(dump);
            (o, output)
        }
        Command::FitFrailty {
            data,
            baseline: b,
            output,
        } => {
            let sample = load(&data.data)?;
            let params = baseline(&sample, &b)?;
            let fit = fit_frailty_a(&sample, params)?;
            (ok("fit-frailty", json!({ "baseline": params, "fit": fit })), output)
        }
        Command::FitResilience {
            data,
            baseline: b,
            output,
        } => {
            let sample = load(&data.data)?;
            let params = baseline(&sample, &b)?;
            let fit = fit_resilience_a(&sample, params)?;
            (ok("fit-resilience", json!({ "baseline": params, "fit": fit })), output)
        }
        Command::Classify {
            dist,
            class,
            grid: g,
            output,
        } => {
            let d = parse_lifetime(&dist)?;
            let grid = grid(&g)?;
            if class.eq_ignore_ascii_case("all") {
                let all = classify_all(&*d, &grid)?;
                let holds: Vec<AgeingClass> = all.iter().filter(|(_, r)| r.holds()).map(|(c, _)| *c).collect();
                let reports: BTreeMap<String, _> = all.into_iter().map(|(c, r)| (c.to_string(), r)).collect();
                let report = json!({ "distribution": d.describe(), "holds": holds, "classes": reports });
                (ok("classify", report), output)
            } else {
                let cls: AgeingClass = class.parse().map_err(anyhow::Error::msg)?;
                let r = classify(&*d, cls, &grid)?;
                let (status, exit) = verdict_status(r.verdict);
                let report = json!({ "distribution": d.describe(), "class": cls, "result": r });
                (outcome("classify", status, exit, report), output)
            }
        }
        Command::CheckOrder {
            rel,
            x,
            y,
            consequence,
            grid: g,
            output,
        } => {
            let rel: OrderRelation = rel.parse().map_err(anyhow::Error::msg)?;
            let (x, y) = (parse_lifetime(&x)?, parse_lifetime(&y)?);
            let grid = grid(&g)?;
            let r = check_order(&*x, &*y, rel, &grid)?;
            let cons = if consequence {
                Some(check_consequence(&*x, &*y, rel, &grid)?)
            } else {
                None
            };
            let (status, exit) = verdict_status(r.verdict);
            let report = json!({
                "relation": rel,
                "x": x.describe(),
                "y": y.describe(),
                "result": r,
                "consequence": cons,
            });
            (outcome("check-order", status, exit, report), output)
        }
        Command::VerifyTheorem {
            id,
            baseline,
            mixing,
            grid: g,
            output,
        } => {
            let spec = TheoremSpec::find(&id).with_context(|| {
                let ids: Vec<&str> = frailmix::THEOREMS.iter().map(|t| t.id).collect();
                format!("unknown theorem '{id}'; known: {}", ids.join(", "))
            })?;
            let b = parse_lifetime(&baseline)?;
            let m = parse_mixing(&mixing)?;
            let r = verify_theorem(spec, b, m, &grid(&g)?)?;
            let (status, exit) = theorem_status(r.outcome);
            (outcome("verify-theorem", status, exit, to_value(&r)?), output)
        }
        Command::Reproduce {
            target,
            data,
            grid: g,
            bootstrap: bs,
            output,
        } => reproduce(target, data.as_deref(), &g, &bs, output)?,
    })
}

fn reproduce(
    target: Target,
    data: Option<&Path>,
    g: &GridArgs,
    bs: &BootstrapArgs,
    output: Output,
) -> Result<(Outcome, Output)> {
    if target == Target::Examples {
        let r = reproduce_examples()?;
        let (status, exit) = if r.all_hold() { ("holds", EXIT_OK) } else { ("fails", EXIT_FAILS) };
        return Ok((outcome("reproduce-examples", status, exit, to_value(&r)?), output));
    }
    let Some(path) = data else {
        bail!("reproduce {target:?} needs --data <csv>");
    };
    let sample = load(path)?;
    let mut opts = match target {
        Target::Scenario1 => ScenarioOptions::scenario1(),
        _ => ScenarioOptions::scenario2(),
    };
    if let Some(r) = &g.grid {
        let (lo, hi, n) = parse_range(r)?;
        opts.x_lo = lo;
        opts.x_hi = hi;
        opts.n_x = n;
    }
    if let Some(t) = &g.t {
        opts.t_values = parse_list(t, "--t")?;
    }
    opts.slack = g.slack;
    opts.bootstrap = bootstrap(bs);
    let r = match target {
        Target::Scenario1 => scenario1(&sample, &opts)?,
        _ => scenario2(&sample, &opts)?,
    };
    let (status, exit) = if r.curves_hold() { ("holds", EXIT_OK) } else { ("fails", EXIT_FAILS) };
    let name = r.scenario.clone();
    let curves = r.curves.clone();
    let mut report = to_value(&r)?;
    // The curves go to CSV/SVG; keep the JSON report compact.
    if let Some(obj) = report.as_object_mut() {
        obj.remove("curves");
    }
    let mut o = outcome(&name, status, exit, report);
    o.curves = Some(curves);
    Ok((o, output))
}

fn ok(name: &str, report: Value) -> Outcome {
    outcome(name, "ok", EXIT_OK, report)
}

fn outcome(name: &str, status: &'static str, exit: u8, report: Value) -> Outcome {
    Outcome {
        name: name.to_string(),
        status,
        exit,
        report,
        curves: None,
    }
}

fn envelope(o: &Outcome) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": o.name,
        "status": o.status,
        "exit_code": o.exit,
        "report": o.report,
    })
}

/// Columns grouped by the label before ` t=`, one chart per group.
fn svg_groups(d: &CurveDump) -> Vec<(String, CurveDump)> {
    let mut groups: Vec<(String, CurveDump)> = Vec::new();
    for (name, values) in &d.columns {
        let label = name.split(" t=").next().unwrap_or(name).to_string();
        let idx = match groups.iter().position(|(l, _)| *l == label) {
            Some(i) => i,
            None => {
                let mut sub = CurveDump::new(d.x.clone());
                sub.metadata = d.metadata.clone();
                groups.push((label, sub));
                groups.len() - 1
            }
        };
        groups[idx].1.push(name.clone(), values.clone());
    }
    groups
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' => out.push(c.to_ascii_lowercase()),
            '*' => out.push_str("star"),
            _ if !out.ends_with('-') => out.push('-'),
            _ => {}
        }
    }
    out.trim_matches('-').to_string()
}

fn emit(o: &Outcome, output: &Output) -> Result<()> {
    let json_text = serde_json::to_string_pretty(&envelope(o))?;
    if let Some(dir) = &output.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let write = |file: String, text: &str| {
            let p = dir.join(file);
            fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
        };
        write(format!("{}.json", o.name), &json_text)?;
        if let Some(c) = &o.curves {
            write(format!("{}.csv", o.name), &c.to_csv())?;
            for (label, sub) in svg_groups(c) {
                write(format!("{}-{}.svg", o.name, slug(&label)), &sub.to_svg(&label))?;
            }
        }
    }
    let text = match (output.format, &o.curves) {
        (Format::Json, _) => json_text + "\n",
        (Format::Csv, Some(c)) => c.to_csv(),
        (Format::Svg, Some(c)) => c.to_svg(&o.name),
        (_, None) => unreachable!("format checked before execution"),
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        // A closed pipe (e.g. `| head`) is not an error for the command.
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}
