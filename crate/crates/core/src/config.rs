//! Text specs for distributions, mixing laws and mixture models.
//!
//! A spec is a family name followed by `key=value` pairs; a value may itself
//! be a spec wrapped in parentheses:
//!
//! ```text
//! weibull scale=986.672 shape=1.24044
//! frailty baseline=(gammapdf shape=2 rate=1) mixing=(uniform lo=0 hi=1)
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::distributions::{
    DistributionError, Lifetime, MixingDistribution, PdfDistribution, ReflectedWeibull, UniformLifetime, Weibull,
    WeibullParams,
};
use crate::mixture::{GammaClosedForm, MixtureKind, MixtureModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("empty spec")]
    Empty,
    #[error("unbalanced parentheses in '{0}'")]
    Unbalanced(String),
    #[error("expected key=value, found '{0}'")]
    NotAPair(String),
    #[error("unknown {what} family '{name}'")]
    UnknownFamily { what: &'static str, name: String },
    #[error("{family}: missing parameter '{key}'")]
    Missing { family: String, key: String },
    #[error("{family}: unexpected parameter '{key}'")]
    Unexpected { family: String, key: String },
    #[error("{family}: '{key}' is not a number: '{value}'")]
    NotANumber { family: String, key: String, value: String },
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Mixture(#[from] crate::mixture::MixtureError),
}

/// Parsed but uninterpreted spec.
#[derive(Debug, Clone, PartialEq)]
pub struct Spec {
    pub family: String,
    pub params: BTreeMap<String, String>,
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        // Only strip if the outer pair matches each other.
        let mut depth = 0i32;
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && i + 1 < t.len() {
                return t;
            }
        }
        return strip_parens(&t[1..t.len() - 1]);
    }
    t
}

fn tokens(s: &str) -> Result<Vec<String>, ConfigError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ConfigError::Unbalanced(s.to_string()));
                }
            }
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(ConfigError::Unbalanced(s.to_string()));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

impl Spec {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let toks = tokens(strip_parens(s))?;
        let (family, rest) = toks.split_first().ok_or(ConfigError::Empty)?;
        let mut params = BTreeMap::new();
        for tok in rest {
            let (k, v) = tok.split_once('=').ok_or_else(|| ConfigError::NotAPair(tok.clone()))?;
            params.insert(k.trim().to_ascii_lowercase(), strip_parens(v).to_string());
        }
        Ok(Self {
            family: family.to_ascii_lowercase(),
            params,
        })
    }

    fn take(&mut self, key: &str) -> Result<String, ConfigError> {
        self.params.remove(key).ok_or_else(|| ConfigError::Missing {
            family: self.family.clone(),
            key: key.to_string(),
        })
    }

    fn num(&mut self, key: &str) -> Result<f64, ConfigError> {
        let v = self.take(key)?;
        v.parse().map_err(|_| ConfigError::NotANumber {
            family: self.family.clone(),
            key: key.to_string(),
            value: v,
        })
    }

    fn num_or(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        if self.params.contains_key(key) {
            self.num(key)
        } else {
            Ok(default)
        }
    }

    fn done(self) -> Result<(), ConfigError> {
        match self.params.into_keys().next() {
            Some(key) => Err(ConfigError::Unexpected {
                family: self.family,
                key,
            }),
            None => Ok(()),
        }
    }
}

/// Any lifetime law: `weibull`, `exponential`, `gammapdf`, `uniform`,
/// `reflectedweibull`, `frailty`, `resilience`, or the closed-form
/// `gammafrailty` / `gammaresilience` (`scale= shape= a=`).
pub fn parse_lifetime(s: &str) -> Result<Arc<dyn Lifetime<f64>>, ConfigError> {
    let mut spec = Spec::parse(s)?;
    let d: Arc<dyn Lifetime<f64>> = match spec.family.as_str() {
        "weibull" => Arc::new(Weibull::with(spec.num("scale")?, spec.num("shape")?)?),
        "exponential" => Arc::new(Weibull::exponential(spec.num("rate")?)?),
        // Bare `gammapdf` is x e^{-x}.
        "gammapdf" => Arc::new(PdfDistribution::gamma(spec.num_or("shape", 2.0)?, spec.num_or("rate", 1.0)?)?),
        "uniform" => Arc::new(UniformLifetime::new(spec.num("lo")?, spec.num("hi")?)?),
        "reflectedweibull" => Arc::new(ReflectedWeibull::new(
            spec.num("upper")?,
            spec.num("scale")?,
            spec.num("shape")?,
        )?),
        "frailty" | "resilience" => Arc::new(model_from(&mut spec)?),
        "gammafrailty" | "gammaresilience" => {
            let kind = if spec.family == "gammafrailty" {
                MixtureKind::Frailty
            } else {
                MixtureKind::Resilience
            };
            let params = WeibullParams::new(spec.num("scale")?, spec.num("shape")?)?;
            Arc::new(GammaClosedForm::new(kind, params, spec.num("a")?)?)
        }
        other => {
            return Err(ConfigError::UnknownFamily {
                what: "distribution",
                name: other.to_string(),
            })
        }
    };
    spec.done()?;
    Ok(d)
}

/// `uniform lo= hi=`, `gamma shape= rate=`, `truncgamma a=`,
/// `truncgamma shape= rate= lower=`, `degenerate value=`.
pub fn parse_mixing(s: &str) -> Result<MixingDistribution<f64>, ConfigError> {
    let mut spec = Spec::parse(s)?;
    let m = match spec.family.as_str() {
        "uniform" => MixingDistribution::uniform(spec.num("lo")?, spec.num("hi")?)?,
        "gamma" => MixingDistribution::gamma(spec.num("shape")?, spec.num("rate")?)?,
        "truncgamma" => {
            if spec.params.contains_key("a") {
                MixingDistribution::truncated_gamma_from_a(spec.num("a")?)?
            } else {
                MixingDistribution::truncated_gamma(spec.num("shape")?, spec.num("rate")?, spec.num_or("lower", 1.0)?)?
            }
        }
        "degenerate" => MixingDistribution::degenerate(spec.num("value")?)?,
        other => {
            return Err(ConfigError::UnknownFamily {
                what: "mixing",
                name: other.to_string(),
            })
        }
    };
    spec.done()?;
    Ok(m)
}

fn model_from(spec: &mut Spec) -> Result<MixtureModel<f64>, ConfigError> {
    let kind = match spec.family.as_str() {
        "frailty" => MixtureKind::Frailty,
        "resilience" => MixtureKind::Resilience,
        other => {
            return Err(ConfigError::UnknownFamily {
                what: "model",
                name: other.to_string(),
            })
        }
    };
    let baseline = parse_lifetime(&spec.take("baseline")?)?;
    let mixing = parse_mixing(&spec.take("mixing")?)?;
    Ok(MixtureModel::new(kind, baseline, mixing))
}

/// `frailty baseline=<spec> mixing=<spec>` or `resilience ...`.
pub fn parse_model(s: &str) -> Result<MixtureModel<f64>, ConfigError> {
    let mut spec = Spec::parse(s)?;
    let m = model_from(&mut spec)?;
    spec.done()?;
    Ok(m)
}
