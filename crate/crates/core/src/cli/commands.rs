use serde::Serialize;

use super::config::RunConfig;
use super::output::{fmt_float, Table};
use crate::analysis::{
    converse_experiment, error_curve, fit_loglog, fit_rate, omega1_sweep, omega_phi2_sweep,
    saturation_probe, voronovskaya_check, ConverseReport, ErrorCurve, GridConfig,
    GridDistribution, HypothesisReport, Interval, ModulusEstimate, PowerFit, RateFit,
    SaturationReport, SaturationVerdict, VoronovskayaReport,
};
use crate::corpus::{self, builtin, catalog, FunctionSpec, FAMILIES};
use crate::error::{Error, Result};
use crate::exact::{rational_string, rational_to_f64, ArbitraryInteger, ExactRational};
use crate::operators::{build_model, ScaledSample};
use crate::serde_exact;

/// Result of one command: the nested report body, its flat table and an
/// optional failure message that turns into exit status 1 under `--strict`.
pub struct Outcome<T> {
    pub result: T,
    pub table: Table,
    pub failure: Option<String>,
}

fn function(cfg: &RunConfig) -> Result<FunctionSpec> {
    builtin(&cfg.function)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct EntryInfo {
    pub name: String,
    pub doc: &'static str,
    pub declared_s: usize,
    /// `None`: derivatives of every order.
    pub s_max: Option<usize>,
    pub integer_endpoints: bool,
    pub integer_linear: bool,
    pub experiments: &'static [&'static str],
}

#[derive(Debug, Serialize)]
pub struct Family {
    pub pattern: &'static str,
    pub doc: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Listing {
    pub entries: Vec<EntryInfo>,
    pub families: Vec<Family>,
}

pub fn list_fns(_cfg: &RunConfig) -> Result<Outcome<Listing>> {
    let entries: Vec<EntryInfo> = catalog()
        .into_iter()
        .map(|e| EntryInfo {
            name: e.spec.name().to_string(),
            doc: e.doc,
            declared_s: e.declared_s,
            s_max: e.spec.s_max(),
            integer_endpoints: e.spec.integer_endpoints(),
            integer_linear: e.spec.integer_linear(),
            experiments: e.experiments,
        })
        .collect();
    let mut table = Table::new(&["name", "declared_s", "s_max", "integer_endpoints", "integer_linear", "doc"]);
    for e in &entries {
        table.push(vec![
            e.name.clone(),
            e.declared_s.to_string(),
            e.s_max.map_or_else(|| "unbounded".to_string(), |s| s.to_string()),
            e.integer_endpoints.to_string(),
            e.integer_linear.to_string(),
            e.doc.to_string(),
        ]);
    }
    let families = FAMILIES
        .iter()
        .map(|&(pattern, doc)| Family { pattern, doc })
        .collect();
    Ok(Outcome {
        result: Listing { entries, families },
        table,
        failure: None,
    })
}

#[derive(Debug, Serialize)]
pub struct CoeffRow {
    pub k: usize,
    #[serde(serialize_with = "serde_exact::rational")]
    pub node: ExactRational,
    #[serde(serialize_with = "serde_exact::integer")]
    pub binomial: ArbitraryInteger,
    /// `f(k/n) C(n,k)`, or a rational approximation of it.
    #[serde(serialize_with = "serde_exact::rational")]
    pub scaled: ExactRational,
    /// Certified bound on the error of `scaled`; absent when exact.
    #[serde(serialize_with = "serde_exact::opt_rational")]
    pub scaled_error: Option<ExactRational>,
    #[serde(serialize_with = "serde_exact::opt_integer")]
    pub rounded: Option<ArbitraryInteger>,
    #[serde(serialize_with = "serde_exact::rational")]
    pub coeff: ExactRational,
    pub coeff_float: f64,
}

#[derive(Debug, Serialize)]
pub struct CoeffBlock {
    pub n: usize,
    pub rows: Vec<CoeffRow>,
}

pub fn coeffs(cfg: &RunConfig) -> Result<Outcome<Vec<CoeffBlock>>> {
    let f = function(cfg)?;
    let mut table = Table::new(&[
        "n", "k", "node", "binomial", "scaled", "scaled_error", "rounded", "coeff", "coeff_float",
    ]);
    let mut blocks = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let model = build_model(&f, n, cfg.kind)?;
        let rows: Vec<CoeffRow> = model
            .rows()
            .iter()
            .map(|r| {
                let (scaled, scaled_error) = match &r.scaled {
                    ScaledSample::Exact(v) => (v.clone(), None),
                    ScaledSample::Approx { value, err } => (value.clone(), Some(err.clone())),
                };
                CoeffRow {
                    k: r.k,
                    node: r.node.clone(),
                    binomial: r.binomial.clone(),
                    scaled,
                    scaled_error,
                    rounded: r.rounded.clone(),
                    coeff_float: rational_to_f64(&r.coeff),
                    coeff: r.coeff.clone(),
                }
            })
            .collect();
        for r in &rows {
            table.push(vec![
                n.to_string(),
                r.k.to_string(),
                rational_string(&r.node),
                r.binomial.to_string(),
                rational_string(&r.scaled),
                opt(r.scaled_error.as_ref().map(rational_string)),
                opt(r.rounded.as_ref()),
                rational_string(&r.coeff),
                fmt_float(r.coeff_float),
            ]);
        }
        blocks.push(CoeffBlock { n, rows });
    }
    Ok(Outcome {
        result: blocks,
        table,
        failure: None,
    })
}

#[derive(Debug, Serialize)]
pub struct EvalRow {
    pub n: usize,
    #[serde(serialize_with = "serde_exact::rational")]
    pub x: ExactRational,
    #[serde(serialize_with = "serde_exact::rational")]
    pub value_exact: ExactRational,
    pub value: f64,
    /// `f(x)` when it is rational.
    #[serde(serialize_with = "serde_exact::opt_rational")]
    pub target_exact: Option<ExactRational>,
    pub target: f64,
    /// `model(x) - f(x)`
    pub gap: f64,
}

pub fn eval(cfg: &RunConfig) -> Result<Outcome<Vec<EvalRow>>> {
    let f = function(cfg)?;
    let mut table = Table::new(&["n", "x", "value_exact", "value", "target_exact", "target", "gap"]);
    let mut rows = Vec::new();
    for &n in &cfg.n {
        let model = build_model(&f, n, cfg.kind)?;
        for x in &cfg.x {
            let value_exact = model.evaluate_exact(x)?;
            let target_exact = f.eval_exact(x);
            let xf = rational_to_f64(x);
            let gap = match &target_exact {
                Some(t) => rational_to_f64(&(&value_exact - t)),
                None => model.evaluate(xf)? - f.value(xf),
            };
            let row = EvalRow {
                n,
                x: x.clone(),
                value: rational_to_f64(&value_exact),
                value_exact,
                target: f.value(xf),
                target_exact,
                gap,
            };
            table.push(vec![
                n.to_string(),
                rational_string(x),
                rational_string(&row.value_exact),
                fmt_float(row.value),
                opt(row.target_exact.as_ref().map(rational_string)),
                fmt_float(row.target),
                fmt_float(row.gap),
            ]);
            rows.push(row);
        }
    }
    Ok(Outcome {
        result: rows,
        table,
        failure: None,
    })
}

fn curve_table(curve: &ErrorCurve) -> Table {
    let mut table = Table::new(&["n", "error", "exact_zero", "argmax"]);
    for p in &curve.points {
        table.push(vec![
            p.n.to_string(),
            fmt_float(p.error),
            p.exact_zero.to_string(),
            fmt_float(p.argmax),
        ]);
    }
    table
}

pub fn error(cfg: &RunConfig) -> Result<Outcome<ErrorCurve>> {
    let f = function(cfg)?;
    let curve = error_curve(&f, cfg.kind, cfg.s, &cfg.n, &cfg.grid_config())?;
    Ok(Outcome {
        table: curve_table(&curve),
        result: curve,
        failure: None,
    })
}

#[derive(Debug, Serialize)]
pub struct RateReport {
    pub curve: ErrorCurve,
    pub rate: Option<RateFit>,
    /// Why no rate was fitted.
    pub note: Option<String>,
}

pub fn rate(cfg: &RunConfig) -> Result<Outcome<RateReport>> {
    let f = function(cfg)?;
    let curve = error_curve(&f, cfg.kind, cfg.s, &cfg.n, &cfg.grid_config())?;
    let (rate, note) = match fit_rate(&curve.pairs()) {
        Ok(r) => (Some(r), None),
        Err(e @ Error::InsufficientData { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    // Plot data: log n, log error and the fitted line.
    let mut table = Table::new(&["n", "error", "log_n", "log_error", "fitted_log_error", "role"]);
    for p in &curve.points {
        let role = match &rate {
            _ if p.exact_zero || p.error == 0.0 => "exact_zero",
            Some(r) if r.discarded.iter().any(|d| d.0 == p.n) => "discarded",
            Some(_) => "fit",
            None => "unfitted",
        };
        let log_n = (p.n as f64).ln();
        let log_error = if p.error > 0.0 { fmt_float(p.error.ln()) } else { String::new() };
        let fitted = rate
            .as_ref()
            .map(|r| fmt_float(r.constant.ln() - r.exponent * log_n))
            .unwrap_or_default();
        table.push(vec![
            p.n.to_string(),
            fmt_float(p.error),
            fmt_float(log_n),
            log_error,
            fitted,
            role.to_string(),
        ]);
    }
    Ok(Outcome {
        result: RateReport { curve, rate, note },
        table,
        failure: None,
    })
}

#[derive(Debug, Serialize)]
pub struct ModulusReport {
    pub function: String,
    /// Derivative order whose moduli are estimated.
    pub order: usize,
    pub omega1: Vec<ModulusEstimate>,
    pub omega_phi2: Vec<ModulusEstimate>,
    pub slope_omega1: Option<PowerFit>,
    pub slope_phi2: Option<PowerFit>,
}

fn slope(estimates: &[ModulusEstimate]) -> Option<PowerFit> {
    let (ts, vs): (Vec<f64>, Vec<f64>) = estimates
        .iter()
        .filter(|e| e.value > 0.0)
        .map(|e| (e.t, e.value))
        .unzip();
    fit_loglog(&ts, &vs).ok()
}

pub fn modulus(cfg: &RunConfig) -> Result<Outcome<ModulusReport>> {
    let f = function(cfg)?;
    let fs = f.derivative_fn(cfg.s)?;
    let grid = cfg.grid_config();
    let uniform = GridConfig {
        distribution: GridDistribution::Uniform,
        ..grid
    };
    let omega1 = omega1_sweep(&fs, &cfg.t, Interval::unit(), &uniform)?;
    let omega_phi2 = omega_phi2_sweep(&fs, &cfg.t, &grid)?;
    let mut table = Table::new(&["t", "omega1", "omega_phi2"]);
    for (a, b) in omega1.iter().zip(&omega_phi2) {
        table.push(vec![fmt_float(a.t), fmt_float(a.value), fmt_float(b.value)]);
    }
    Ok(Outcome {
        result: ModulusReport {
            function: f.name().to_string(),
            order: cfg.s,
            slope_omega1: slope(&omega1),
            slope_phi2: slope(&omega_phi2),
            omega1,
            omega_phi2,
        },
        table,
        failure: None,
    })
}

pub fn saturation(cfg: &RunConfig) -> Result<Outcome<SaturationReport>> {
    let f = function(cfg)?;
    let report = saturation_probe(&f, cfg.kind, cfg.s, &cfg.n, &cfg.grid_config())?;
    let mut table = Table::new(&["n", "error", "n_error", "exact_zero"]);
    for (p, (_, scaled)) in report.curve.points.iter().zip(&report.scaled_errors) {
        table.push(vec![
            p.n.to_string(),
            fmt_float(p.error),
            fmt_float(*scaled),
            p.exact_zero.to_string(),
        ]);
    }
    let failure = (report.verdict == SaturationVerdict::SubSaturated).then(|| {
        format!("n * error vanishes for `{}`, which is not integer-linear", report.function)
    });
    Ok(Outcome {
        result: report,
        table,
        failure,
    })
}

pub fn converse(cfg: &RunConfig) -> Result<Outcome<ConverseReport>> {
    let f = function(cfg)?;
    let report = converse_experiment(&f, cfg.kind, cfg.s, &cfg.n, &cfg.t, &cfg.grid_config())?;
    let mut table = Table::new(&["series", "x", "value"]);
    for p in &report.curve.points {
        table.push(vec!["error".into(), p.n.to_string(), fmt_float(p.error)]);
    }
    for (series, values) in [("omega_phi2", &report.omega_phi2), ("omega1", &report.omega1)] {
        for e in values {
            table.push(vec![series.into(), fmt_float(e.t), fmt_float(e.value)]);
        }
    }
    Ok(Outcome {
        result: report,
        table,
        failure: None,
    })
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome<HypothesisReport>> {
    let f = function(cfg)?;
    let report = corpus::validate(&f, cfg.s, cfg.n_min..=cfg.n_max)?;
    let mut table = Table::new(&["check", "passed", "detail"]);
    for c in &report.checks {
        table.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
    }
    let failure = (!report.passed).then(|| {
        let names: Vec<&str> = report.failures().map(|c| c.detail.as_str()).collect();
        format!("hypotheses fail for `{}`: {}", report.function, names.join("; "))
    });
    Ok(Outcome {
        result: report,
        table,
        failure,
    })
}

pub fn voronovskaya(cfg: &RunConfig) -> Result<Outcome<Vec<VoronovskayaReport>>> {
    let f = function(cfg)?;
    let reports = cfg
        .x
        .iter()
        .map(|x| voronovskaya_check(&f, x, &cfg.n))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["x", "n", "scaled_gap", "limit", "residual", "residual_exact"]);
    for r in &reports {
        for row in &r.rows {
            table.push(vec![
                rational_string(&r.x),
                row.n.to_string(),
                fmt_float(row.scaled_gap),
                fmt_float(r.limit),
                fmt_float(row.residual),
                opt(row.residual_exact.as_ref().map(rational_string)),
            ]);
        }
    }
    let failure = reports
        .iter()
        .find(|r| !r.decreasing)
        .map(|r| format!("residuals at x = {} do not decrease", rational_string(&r.x)));
    Ok(Outcome {
        result: reports,
        table,
        failure,
    })
}
