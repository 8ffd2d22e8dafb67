use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monotone::{check_log_series, CheckError, Direction, MonotonicityReport};

/// Shared x column plus named value columns, with free-form metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDump {
    pub metadata: BTreeMap<String, String>,
    pub x: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveParseError {
    #[error("missing header row")]
    MissingHeader,
    #[error("line {line}: {reason}")]
    BadRow { line: usize, reason: String },
    #[error("column lengths differ or x is not strictly increasing")]
    Shape,
}

impl CurveDump {
    pub fn new(x: Vec<f64>) -> Self {
        Self {
            metadata: BTreeMap::new(),
            x,
            columns: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        assert_eq!(values.len(), self.x.len(), "column length must match x");
        self.columns.push((name.into(), values));
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn is_well_formed(&self) -> bool {
        self.x.windows(2).all(|w| w[0] < w[1]) && self.columns.iter().all(|(_, v)| v.len() == self.x.len())
    }

    /// Re-checks a stored ratio column for monotonicity (on its logarithm).
    pub fn check(&self, name: &str, direction: Direction, slack: f64) -> Result<MonotonicityReport, CheckError> {
        let values = self
            .column(name)
            .ok_or_else(|| CheckError::InvalidGrid(format!("no column '{name}'")))?;
        let ln: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        check_log_series(name.to_string(), &self.x, &ln, direction, slack)
    }

    /// `# key: value` metadata lines, then a header and one row per x.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push('x');
        for (name, _) in &self.columns {
            out.push(',');
            out.push_str(&name.replace(',', ";"));
        }
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            let _ = write!(out, "{x:?}");
            for (_, v) in &self.columns {
                let _ = write!(out, ",{:?}", v[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CurveParseError> {
        let mut metadata = BTreeMap::new();
        let mut header: Option<Vec<String>> = None;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                if let Some((k, v)) = meta.split_once(':') {
                    metadata.insert(k.trim().to_string(), v.trim().to_string());
                }
                continue;
            }
            match &header {
                None => header = Some(line.split(',').map(|s| s.trim().to_string()).collect()),
                Some(h) => {
                    let row: Result<Vec<f64>, _> = line.split(',').map(|s| s.trim().parse::<f64>()).collect();
                    let row = row.map_err(|e| CurveParseError::BadRow {
                        line: i + 1,
                        reason: e.to_string(),
                    })?;
                    if row.len() != h.len() {
                        return Err(CurveParseError::BadRow {
                            line: i + 1,
                            reason: format!("{} fields, expected {}", row.len(), h.len()),
                        });
                    }
                    rows.push(row);
                }
            }
        }
        let header = header.ok_or(CurveParseError::MissingHeader)?;
        let x = rows.iter().map(|r| r[0]).collect();
        let columns = header
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, name)| (name.clone(), rows.iter().map(|r| r[j]).collect()))
            .collect();
        let dump = Self { metadata, x, columns };
        if dump.is_well_formed() {
            Ok(dump)
        } else {
            Err(CurveParseError::Shape)
        }
    }

    /// Plain line chart, one polyline per column.
    pub fn to_svg(&self, title: &str) -> String {
        const W: f64 = 720.0;
        const H: f64 = 440.0;
        const M: f64 = 56.0;
        const COLORS: [&str; 8] = [
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
        ];
        let finite = |v: &f64| v.is_finite();
        let (x_lo, x_hi) = bounds(self.x.iter().copied().filter(finite));
        let (y_lo, y_hi) = bounds(self.columns.iter().flat_map(|(_, v)| v.iter().copied().filter(finite)));
        let px = |x: f64| M + (x - x_lo) / (x_hi - x_lo) * (W - 2.0 * M);
        let py = |y: f64| H - M - (y - y_lo) / (y_hi - y_lo) * (H - 2.0 * M);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
        let _ = writeln!(
            s,
            r#"<path d="M{M} {M} V{} H{}" fill="none" stroke="black"/>"#,
            H - M,
            W - M
        );
        for i in 0..=4 {
            let fx = x_lo + (x_hi - x_lo) * i as f64 / 4.0;
            let fy = y_lo + (y_hi - y_lo) * i as f64 / 4.0;
            let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#, px(fx), H - M + 16.0, tick(fx));
            let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#, M - 4.0, py(fy) + 4.0, tick(fy));
        }
        for (j, (name, v)) in self.columns.iter().enumerate() {
            let color = COLORS[j % COLORS.len()];
            let pts: Vec<String> = self
                .x
                .iter()
                .zip(v)
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                pts.join(" ")
            );
            let ly = M + 14.0 * j as f64;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{ly:.1}" fill="{color}" text-anchor="end">{}</text>"#,
                W - M,
                escape(name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
