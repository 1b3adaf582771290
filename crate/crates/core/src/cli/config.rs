use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::analysis::{GridConfig, GridDistribution, MIN_GRID_POINTS};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, ratio, ExactRational, TiePolicy};
use crate::operators::OperatorKind;
use crate::serde_exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::invalid(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Optional settings from one source: a config file or the command line.
/// Keys match the long flag names in snake_case.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(rename = "fn")]
    pub function: Option<String>,
    pub kind: Option<String>,
    pub tie: Option<String>,
    pub s: Option<usize>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub n_factor: Option<f64>,
    /// Explicit degrees; overrides the geometric sweep.
    pub n: Option<Vec<usize>>,
    pub grid: Option<usize>,
    pub refine: Option<usize>,
    pub distribution: Option<String>,
    pub t: Option<Vec<f64>>,
    pub x: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub strict: Option<bool>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config {
            field: path.display().to_string(),
            message: e.to_string(),
        })
    }

    /// `other` wins wherever it is set.
    pub fn overlay(self, other: Settings) -> Settings {
        Settings {
            function: other.function.or(self.function),
            kind: other.kind.or(self.kind),
            tie: other.tie.or(self.tie),
            s: other.s.or(self.s),
            n_min: other.n_min.or(self.n_min),
            n_max: other.n_max.or(self.n_max),
            n_factor: other.n_factor.or(self.n_factor),
            n: other.n.or(self.n),
            grid: other.grid.or(self.grid),
            refine: other.refine.or(self.refine),
            distribution: other.distribution.or(self.distribution),
            t: other.t.or(self.t),
            x: other.x.or(self.x),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
            strict: other.strict.or(self.strict),
        }
    }
}

/// Fully resolved and validated settings, echoed in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(rename = "fn")]
    pub function: String,
    #[serde(serialize_with = "kind_label")]
    pub kind: OperatorKind,
    pub tie: TiePolicy,
    pub s: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub n_factor: f64,
    /// Effective degree list.
    pub n: Vec<usize>,
    pub grid: usize,
    pub refine: usize,
    pub distribution: GridDistribution,
    pub t: Vec<f64>,
    #[serde(serialize_with = "serde_exact::rationals")]
    pub x: Vec<ExactRational>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub strict: bool,
}

fn kind_label<S: Serializer>(kind: &OperatorKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(kind.label())
}

fn field_error(field: &str, message: impl fmt::Display) -> Error {
    Error::Config {
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn parse_field<T: FromStr<Err = Error>>(field: &str, value: &str) -> Result<T> {
    value.parse().map_err(|e: Error| field_error(field, e))
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(Settings::default()).expect("defaults are valid")
    }
}

/// `n_min, ceil(n_min * factor), ...` up to `n_max`, strictly increasing.
pub fn geometric_degrees(n_min: usize, n_max: usize, factor: f64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        out.push(n);
        let next = (n as f64 * factor).ceil() as usize;
        n = next.max(n + 1);
    }
    out
}

impl RunConfig {
    pub fn resolve(settings: Settings) -> Result<Self> {
        let function = settings.function.unwrap_or_else(|| "monomial(2)".to_string());
        let tie = match settings.tie {
            Some(t) => parse_field("tie", &t)?,
            None => TiePolicy::default(),
        };
        let kind = match settings.kind {
            Some(k) => OperatorKind::parse(&k, tie).map_err(|e| field_error("kind", e))?,
            None => OperatorKind::Classic,
        };
        let s = settings.s.unwrap_or(0);
        let n_min = settings.n_min.unwrap_or(16);
        let n_max = settings.n_max.unwrap_or(512);
        let n_factor = settings.n_factor.unwrap_or(2.0);
        if n_min == 0 {
            return Err(field_error("n_min", "must be at least 1"));
        }
        if n_max < n_min {
            return Err(field_error("n_max", format!("{n_max} is below n_min = {n_min}")));
        }
        if !(n_factor > 1.0) || !n_factor.is_finite() {
            return Err(field_error("n_factor", format!("{n_factor} must be a finite number above 1")));
        }
        let n = match settings.n {
            Some(list) => {
                if list.is_empty() {
                    return Err(field_error("n", "degree list is empty"));
                }
                if list.contains(&0) {
                    return Err(field_error("n", "degrees must be at least 1"));
                }
                list
            }
            None => geometric_degrees(n_min, n_max, n_factor),
        };
        let grid = settings.grid.unwrap_or(4097);
        if grid < MIN_GRID_POINTS {
            return Err(field_error("grid", format!("needs at least {MIN_GRID_POINTS} points, got {grid}")));
        }
        let refine = settings.refine.unwrap_or(30);
        let distribution = match settings.distribution.as_deref() {
            None | Some("clustered") => GridDistribution::Clustered,
            Some("uniform") => GridDistribution::Uniform,
            Some(other) => return Err(field_error("distribution", format!("unknown distribution `{other}`"))),
        };
        let t = settings.t.unwrap_or_else(|| vec![0.4, 0.2, 0.1, 0.05]);
        if t.is_empty() {
            return Err(field_error("t", "step list is empty"));
        }
        if let Some(bad) = t.iter().find(|t| !(**t > 0.0 && **t <= 1.0)) {
            return Err(field_error("t", format!("{bad} is not in (0, 1]")));
        }
        let x = match settings.x {
            Some(list) => {
                let parsed = list
                    .iter()
                    .map(|v| parse_rational(v).map_err(|e| field_error("x", e)))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(bad) = parsed.iter().find(|v| *v < &ratio(0, 1) || *v > &ratio(1, 1)) {
                    return Err(field_error("x", format!("{bad} is not in [0, 1]")));
                }
                if parsed.is_empty() {
                    return Err(field_error("x", "point list is empty"));
                }
                parsed
            }
            None => vec![ratio(1, 2)],
        };
        let format = match settings.format {
            Some(f) => parse_field("format", &f)?,
            None => Format::Json,
        };
        Ok(RunConfig {
            function,
            kind,
            tie,
            s,
            n_min,
            n_max,
            n_factor,
            n,
            grid,
            refine,
            distribution,
            t,
            x,
            out: settings.out,
            format,
            strict: settings.strict.unwrap_or(false),
        })
    }

    pub fn grid_config(&self) -> GridConfig {
        GridConfig {
            points: self.grid,
            distribution: self.distribution,
            refine: self.refine,
        }
    }
}
