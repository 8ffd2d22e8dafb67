use std::path::Path;

use serde::{Deserialize, Serialize};

use super::InferenceError;

/// Complete (uncensored) sample of positive lifetimes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub label: String,
    observations: Vec<f64>,
    sorted: Vec<f64>,
}

impl Sample {
    pub fn new(observations: Vec<f64>, label: impl Into<String>) -> Result<Self, InferenceError> {
        if observations.is_empty() {
            return Err(InferenceError::Empty);
        }
        if let Some((index, &value)) = observations
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(InferenceError::NonPositive { index, value });
        }
        let mut sorted = observations.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self {
            label: label.into(),
            observations,
            sorted,
        })
    }

    /// One value per line; blank lines and `#` comments are ignored.
    pub fn parse_csv(text: &str, label: impl Into<String>) -> Result<Self, InferenceError> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let field = line.split(',').next().unwrap_or("").trim();
            let v: f64 = field.parse().map_err(|_| InferenceError::Parse {
                line: i + 1,
                content: raw.to_string(),
            })?;
            values.push(v);
        }
        Self::new(values, label)
    }

    pub fn from_csv_file(path: &Path) -> std::io::Result<Result<Self, InferenceError>> {
        let text = std::fs::read_to_string(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Self::parse_csv(&text, label))
    }

    pub fn observations(&self) -> &[f64] {
        &self.observations
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Same sample with every value multiplied by `c`.
    pub fn rescaled(&self, c: f64) -> Result<Self, InferenceError> {
        Self::new(self.observations.iter().map(|v| v * c).collect(), self.label.clone())
    }
}
