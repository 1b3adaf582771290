//! Experiment procedures: error curves, saturation, Voronovskaya, boundary
//! interpolation, converse-rate comparison and hypothesis checks.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::modulus::{omega1_sweep, omega_phi2_sweep, ModulusEstimate};
use super::rate::{fit_loglog, fit_rate, PowerFit, RateFit, MIN_RATE_PAIRS};
use super::{sup_norm, GridConfig, Interval};
use crate::corpus::{Endpoint, FunctionSpec, Sample};
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, ExactRational, PrecisionSchedule};
use crate::operators::{build_model, derivative_or_zero, BernsteinPoly, OperatorKind};
use crate::serde_exact;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorPoint {
    pub n: usize,
    pub error: f64,
    /// The difference vanishes identically (checked in exact arithmetic).
    pub exact_zero: bool,
    pub argmax: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorCurve {
    pub function: String,
    pub kind: OperatorKind,
    pub s: usize,
    pub points: Vec<ErrorPoint>,
}

impl ErrorCurve {
    pub fn pairs(&self) -> Vec<(usize, f64)> {
        self.points.iter().map(|p| (p.n, p.error)).collect()
    }

    pub fn all_exact_zero(&self) -> bool {
        self.points.iter().all(|p| p.exact_zero)
    }
}

/// `(model)^(s) - f^(s)` exactly in Bernstein form, for polynomial `f`.
fn exact_difference(f: &FunctionSpec, d: &BernsteinPoly, s: usize) -> Result<Option<BernsteinPoly>> {
    let Some(poly) = f.as_polynomial() else {
        return Ok(None);
    };
    let target = poly.derivative(s);
    let m = d.degree().max(target.degree());
    let target = BernsteinPoly::new(target.to_bernstein(m)?)?;
    Ok(Some(d.sub(&target)?))
}

fn error_point(f: &FunctionSpec, n: usize, kind: OperatorKind, s: usize, grid: &GridConfig) -> Result<ErrorPoint> {
    let model = build_model(f, n, kind)?;
    let d = derivative_or_zero(&model, s)?;
    let estimate = match exact_difference(f, &d, s)? {
        Some(diff) if diff.is_zero() => {
            return Ok(ErrorPoint {
                n,
                error: 0.0,
                exact_zero: true,
                argmax: 0.0,
            })
        }
        Some(diff) => sup_norm(&diff, Interval::unit(), grid)?,
        None => {
            let target = f.derivative_fn(s)?;
            let residual = |x: f64| {
                use super::RealFunction;
                d.value(x) - target.value(x)
            };
            sup_norm(&residual, Interval::unit(), grid)?
        }
    };
    Ok(ErrorPoint {
        n,
        error: estimate.value,
        exact_zero: false,
        argmax: estimate.argmax,
    })
}

/// `||(model_n)^(s) - f^(s)||` for each `n`.
pub fn error_curve(
    f: &FunctionSpec,
    kind: OperatorKind,
    s: usize,
    n_list: &[usize],
    grid: &GridConfig,
) -> Result<ErrorCurve> {
    if !f.supports_order(s) {
        return Err(Error::capability(
            "analysis",
            format!("`{f}` has no derivative oracle of order {s}"),
        ));
    }
    let points = n_list
        .iter()
        .map(|&n| error_point(f, n, kind, s, grid))
        .collect::<Result<_>>()?;
    Ok(ErrorCurve {
        function: f.name().to_string(),
        kind,
        s,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoronovskayaRow {
    pub n: usize,
    /// `n (B_n f(x) - f(x))`
    pub scaled_gap: f64,
    /// `|n (B_n f(x) - f(x)) - x(1-x) f''(x)/2|`
    pub residual: f64,
    #[serde(serialize_with = "serde_exact::opt_rational")]
    pub residual_exact: Option<ExactRational>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoronovskayaReport {
    pub function: String,
    #[serde(serialize_with = "serde_exact::rational")]
    pub x: ExactRational,
    pub limit: f64,
    #[serde(serialize_with = "serde_exact::opt_rational")]
    pub limit_exact: Option<ExactRational>,
    pub exact: bool,
    pub rows: Vec<VoronovskayaRow>,
    /// Residuals never increase along the sweep.
    pub decreasing: bool,
    /// Decay rate of the positive residuals, when there are enough.
    pub rate: Option<RateFit>,
}

/// Convergence of `n (B_n f(x) - f(x))` to `x(1-x) f''(x) / 2`. Computed in
/// exact rationals whenever `f` has exact values and derivatives.
pub fn voronovskaya_check(
    f: &FunctionSpec,
    x: &ExactRational,
    n_list: &[usize],
) -> Result<VoronovskayaReport> {
    if !x.is_positive() || x >= &BigRational::one() {
        return Err(Error::invalid(format!("Voronovskaya point {x} must lie in (0, 1)")));
    }
    let weight = x * (BigRational::one() - x) / BigInt::from(2);
    let exact_route = match (f.eval_exact(x), f.deriv_exact(2, x)) {
        (Some(fx), Some(f2)) => Some((fx, &weight * f2)),
        _ => None,
    };
    let xf = rational_to_f64(x);
    let mut rows = Vec::with_capacity(n_list.len());
    let (limit, limit_exact) = match &exact_route {
        Some((_, lim)) => (rational_to_f64(lim), Some(lim.clone())),
        None => {
            let f2 = f.deriv(2, xf).map_err(|e| match e {
                Error::Capability { message, .. } => Error::capability("analysis", message),
                other => other,
            })?;
            (rational_to_f64(&weight) * f2, None)
        }
    };
    for &n in n_list {
        let model = build_model(f, n, OperatorKind::Classic)?;
        match &exact_route {
            Some((fx, lim)) => {
                let scaled = (model.evaluate_exact(x)? - fx) * BigInt::from(n);
                let residual = (&scaled - lim).abs();
                rows.push(VoronovskayaRow {
                    n,
                    scaled_gap: rational_to_f64(&scaled),
                    residual: rational_to_f64(&residual),
                    residual_exact: Some(residual),
                });
            }
            None => {
                let scaled = n as f64 * (model.evaluate(xf)? - f.value(xf));
                rows.push(VoronovskayaRow {
                    n,
                    scaled_gap: scaled,
                    residual: (scaled - limit).abs(),
                    residual_exact: None,
                });
            }
        }
    }
    let decreasing = rows.windows(2).all(|w| match (&w[0].residual_exact, &w[1].residual_exact) {
        (Some(a), Some(b)) => b <= a,
        _ => w[1].residual <= w[0].residual + 1e-12,
    });
    let positive: Vec<(usize, f64)> = rows
        .iter()
        .filter(|r| r.residual > 0.0)
        .map(|r| (r.n, r.residual))
        .collect();
    let rate = if positive.len() >= MIN_RATE_PAIRS {
        Some(fit_rate(&positive)?)
    } else {
        None
    };
    Ok(VoronovskayaReport {
        function: f.name().to_string(),
        x: x.clone(),
        limit,
        limit_exact,
        exact: exact_route.is_some(),
        rows,
        decreasing,
        rate,
    })
}

/// Outcome of a saturation probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturationVerdict {
    /// Every error is exactly zero and `f` is integer-linear.
    TrivialClass,
    /// `n * error` stays in a bounded band away from zero.
    SaturatedRate,
    /// `n * error` tends to zero although `f` is not integer-linear. This
    /// would contradict saturation and is flagged for investigation.
    SubSaturated,
    /// `n * error` grows: convergence slower than the saturation rate.
    BelowSaturation,
}

/// `max / min` of `n * error` over the upper half of the sweep must stay
/// below this for the rate to count as bounded.
pub const SATURATION_BAND: f64 = 10.0;
/// `n * error` counts as vanishing when its last value drops below this
/// fraction of its first.
pub const VANISHING_FACTOR: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaturationReport {
    pub function: String,
    pub kind: OperatorKind,
    pub s: usize,
    pub verdict: SaturationVerdict,
    /// `(n, n * error)`
    pub scaled_errors: Vec<(usize, f64)>,
    /// `max / min` of `n * error` over the upper half of the sweep.
    pub band_ratio: Option<f64>,
    pub vanishing: bool,
    pub integer_linear: bool,
    pub curve: ErrorCurve,
}

pub fn saturation_probe(
    f: &FunctionSpec,
    kind: OperatorKind,
    s: usize,
    n_list: &[usize],
    grid: &GridConfig,
) -> Result<SaturationReport> {
    if !f.integer_endpoints() {
        return Err(Error::HypothesisViolation(format!(
            "`{f}` does not take integer values at 0 and 1"
        )));
    }
    if n_list.is_empty() {
        return Err(Error::invalid("saturation probe needs at least one degree"));
    }
    let curve = error_curve(f, kind, s, n_list, grid)?;
    let integer_linear = f.integer_linear();
    let scaled: Vec<(usize, f64)> = curve
        .points
        .iter()
        .map(|p| (p.n, p.n as f64 * p.error))
        .collect();
    let top = &scaled[scaled.len() / 2..];
    let max = top.iter().map(|p| p.1).fold(0.0, f64::max);
    let min = top.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let band_ratio = (min > 0.0).then(|| max / min);
    let first = scaled[0].1;
    let last = scaled[scaled.len() - 1].1;
    let vanishing = last < VANISHING_FACTOR * first;
    let verdict = if curve.all_exact_zero() {
        if integer_linear {
            SaturationVerdict::TrivialClass
        } else {
            SaturationVerdict::SubSaturated
        }
    } else if vanishing && !integer_linear {
        SaturationVerdict::SubSaturated
    } else if band_ratio.is_some_and(|r| r < SATURATION_BAND) {
        SaturationVerdict::SaturatedRate
    } else {
        SaturationVerdict::BelowSaturation
    };
    Ok(SaturationReport {
        function: f.name().to_string(),
        kind,
        s,
        verdict,
        scaled_errors: scaled,
        band_ratio,
        vanishing,
        integer_linear,
        curve,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryRow {
    pub n: usize,
    /// `(model)^(i)(0) == f^(i)(0)` for `i = 0..s`.
    pub left: Vec<bool>,
    pub right: Vec<bool>,
    #[serde(serialize_with = "serde_exact::rationals")]
    pub left_values: Vec<ExactRational>,
    #[serde(serialize_with = "serde_exact::rationals")]
    pub right_values: Vec<ExactRational>,
}

impl BoundaryRow {
    pub fn all_match(&self) -> bool {
        self.left.iter().chain(&self.right).all(|b| *b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub function: String,
    pub kind: OperatorKind,
    pub s: usize,
    #[serde(serialize_with = "serde_exact::rationals")]
    pub targets_left: Vec<ExactRational>,
    #[serde(serialize_with = "serde_exact::rationals")]
    pub targets_right: Vec<ExactRational>,
    pub rows: Vec<BoundaryRow>,
    /// Smallest swept `n` from which every later row matches.
    pub threshold: Option<usize>,
}

/// Exact comparison of `(model)^(i)` with `f^(i)` at `0` and `1`,
/// `i = 0, ..., s-1`.
pub fn boundary_interpolation_check(
    f: &FunctionSpec,
    kind: OperatorKind,
    s: usize,
    n_list: &[usize],
) -> Result<BoundaryReport> {
    if !kind.is_integer() {
        return Err(Error::invalid("boundary interpolation applies to integer kinds"));
    }
    let order = s.max(1);
    let endpoint_values = |side| -> Result<Vec<ExactRational>> {
        (0..order)
            .map(|i| {
                f.endpoint(i, side).ok_or_else(|| {
                    Error::capability("analysis", format!("`{f}` lacks f^({i}) at the endpoints"))
                })
            })
            .collect()
    };
    let targets_left = endpoint_values(Endpoint::Left)?;
    let targets_right = endpoint_values(Endpoint::Right)?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let model = build_model(f, n, kind)?;
        let mut left_values = Vec::with_capacity(order);
        let mut right_values = Vec::with_capacity(order);
        for i in 0..order {
            let d = derivative_or_zero(&model, i)?;
            let coeffs = d.coeffs();
            left_values.push(coeffs[0].clone());
            right_values.push(coeffs[coeffs.len() - 1].clone());
        }
        rows.push(BoundaryRow {
            n,
            left: left_values.iter().zip(&targets_left).map(|(a, b)| a == b).collect(),
            right: right_values.iter().zip(&targets_right).map(|(a, b)| a == b).collect(),
            left_values,
            right_values,
        });
    }
    let threshold = match rows.iter().rposition(|r| !r.all_match()) {
        None => rows.first().map(|r| r.n),
        Some(i) => rows.get(i + 1).map(|r| r.n),
    };
    Ok(BoundaryReport {
        function: f.name().to_string(),
        kind,
        s,
        targets_left,
        targets_right,
        rows,
        threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConverseReport {
    pub function: String,
    pub kind: OperatorKind,
    pub s: usize,
    pub curve: ErrorCurve,
    /// Every error vanished exactly; fits were skipped.
    pub trivial: bool,
    pub rate: Option<RateFit>,
    pub omega_phi2: Vec<ModulusEstimate>,
    pub omega1: Vec<ModulusEstimate>,
    /// Slope of `ln omega_phi2` against `ln t`; expected near `2 alpha`.
    pub slope_phi2: Option<PowerFit>,
    /// Slope of `ln omega_1` against `ln t`; expected near `alpha`.
    pub slope_omega1: Option<PowerFit>,
    pub phi2_vanishes: bool,
    pub omega1_vanishes: bool,
    pub delta_phi2: Option<f64>,
    pub delta_omega1: Option<f64>,
    /// `0 < alpha < 1`, the range where the converse estimate applies.
    pub in_theorem_range: bool,
}

fn modulus_slope(estimates: &[ModulusEstimate]) -> Option<PowerFit> {
    let (ts, vs): (Vec<f64>, Vec<f64>) = estimates
        .iter()
        .filter(|e| e.value > 0.0)
        .map(|e| (e.t, e.value))
        .unzip();
    fit_loglog(&ts, &vs).ok()
}

/// Measured error rate of the `s`-th derivative against the slopes of the
/// moduli of `f^(s)`. Reports only; nothing is asserted.
pub fn converse_experiment(
    f: &FunctionSpec,
    kind: OperatorKind,
    s: usize,
    n_list: &[usize],
    t_list: &[f64],
    grid: &GridConfig,
) -> Result<ConverseReport> {
    if s == 0 {
        return Err(Error::invalid("converse experiment needs s >= 1"));
    }
    let curve = error_curve(f, kind, s, n_list, grid)?;
    let fs = f.derivative_fn(s)?;
    let omega_phi2 = omega_phi2_sweep(&fs, t_list, grid)?;
    let uniform = GridConfig {
        distribution: super::GridDistribution::Uniform,
        ..*grid
    };
    let omega1 = omega1_sweep(&fs, t_list, Interval::unit(), &uniform)?;
    let trivial = curve.all_exact_zero();
    let rate = if trivial { None } else { fit_rate(&curve.pairs()).ok() };
    let slope_phi2 = if trivial { None } else { modulus_slope(&omega_phi2) };
    let slope_omega1 = if trivial { None } else { modulus_slope(&omega1) };
    let alpha = rate.as_ref().map(|r| r.exponent);
    Ok(ConverseReport {
        function: f.name().to_string(),
        kind,
        s,
        trivial,
        delta_phi2: alpha.zip(slope_phi2).map(|(a, p)| (p.slope - 2.0 * a).abs()),
        delta_omega1: alpha.zip(slope_omega1).map(|(a, p)| (p.slope - a).abs()),
        in_theorem_range: alpha.is_some_and(|a| a > 0.0 && a < 1.0),
        phi2_vanishes: omega_phi2.iter().all(|e| e.value == 0.0),
        omega1_vanishes: omega1.iter().all(|e| e.value == 0.0),
        curve,
        rate,
        omega_phi2,
        omega1,
        slope_phi2,
        slope_omega1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InequalityViolation {
    pub n: usize,
    pub k: usize,
    pub side: Endpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub function: String,
    pub s: usize,
    pub checks: Vec<HypothesisCheck>,
    /// Least `n0` in the range with both inequality families holding for
    /// every swept `n >= n0`.
    pub n0: Option<usize>,
    pub violations: Vec<InequalityViolation>,
    pub passed: bool,
}

impl HypothesisReport {
    pub fn failures(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn derivative_label(i: usize, point: &str) -> String {
    match i {
        0 => format!("f({point})"),
        1..=3 => format!("f{}({point})", "'".repeat(i)),
        _ => format!("f^({i})({point})"),
    }
}

/// Sign of `sample - rhs`, escalating precision until it is decided.
fn certified_nonnegative(
    f: &FunctionSpec,
    x: &ExactRational,
    rhs: &ExactRational,
    k: usize,
) -> Result<bool> {
    let schedule = PrecisionSchedule::default();
    let mut last = schedule.start_bits;
    for bits in schedule.steps() {
        last = bits;
        match f.sample(x, bits) {
            Sample::Exact(v) => return Ok(v >= *rhs),
            Sample::Approx { value, err } => {
                let diff = value - rhs;
                if diff >= err {
                    return Ok(true);
                }
                if diff < -err {
                    return Ok(false);
                }
            }
        }
    }
    Err(Error::PrecisionExhausted { k, bits: last })
}

/// Endpoint integrality, flatness of `f^(i)` at the endpoints for
/// `i = 2..s`, and the two one-sided inequality families over `n_range`.
pub fn hypothesis_check(
    f: &FunctionSpec,
    s: usize,
    n_range: RangeInclusive<usize>,
) -> Result<HypothesisReport> {
    let mut checks = Vec::new();
    let value_at = |i: usize, side: Endpoint| {
        f.endpoint(i, side).ok_or_else(|| {
            Error::capability("analysis", format!("`{f}` lacks f^({i}) at the endpoints"))
        })
    };
    let integral_orders = if s >= 1 { 0..=1 } else { 0..=0 };
    for i in integral_orders {
        for (side, point) in [(Endpoint::Left, "0"), (Endpoint::Right, "1")] {
            let v = value_at(i, side)?;
            let label = derivative_label(i, point);
            checks.push(HypothesisCheck {
                name: format!("{label} integer"),
                passed: v.is_integer(),
                detail: format!("{label} = {v}"),
            });
        }
    }
    for i in 2..=s {
        for (side, point) in [(Endpoint::Left, "0"), (Endpoint::Right, "1")] {
            let v = value_at(i, side)?;
            let label = derivative_label(i, point);
            checks.push(HypothesisCheck {
                name: format!("{label} = 0"),
                passed: v.is_zero(),
                detail: format!("{label} = {v}"),
            });
        }
    }

    let mut violations = Vec::new();
    let mut failing_ns = Vec::new();
    let swept: Vec<usize> = n_range.filter(|&n| n >= s.max(1)).collect();
    if s >= 1 {
        let (f0, f1) = (value_at(0, Endpoint::Left)?, value_at(0, Endpoint::Right)?);
        let (d0, d1) = (value_at(1, Endpoint::Left)?, value_at(1, Endpoint::Right)?);
        for &n in &swept {
            let nb = BigInt::from(n);
            let mut ok = true;
            for k in 1..=s.min(n) {
                let x = BigRational::new(BigInt::from(k), nb.clone());
                let rhs = &f0 + &x * &d0;
                if !certified_nonnegative(f, &x, &rhs, k)? {
                    ok = false;
                    violations.push(InequalityViolation { n, k, side: Endpoint::Left });
                }
            }
            for k in n.saturating_sub(s)..n {
                let x = BigRational::new(BigInt::from(k), nb.clone());
                let rhs = &f1 - (BigRational::one() - &x) * &d1;
                if !certified_nonnegative(f, &x, &rhs, k)? {
                    ok = false;
                    violations.push(InequalityViolation { n, k, side: Endpoint::Right });
                }
            }
            if !ok {
                failing_ns.push(n);
            }
        }
    }
    let n0 = match failing_ns.last() {
        None => swept.first().copied(),
        Some(&bad) => swept.iter().copied().find(|&n| n > bad),
    };
    if s >= 1 {
        checks.push(HypothesisCheck {
            name: "one-sided inequalities".to_string(),
            passed: n0.is_some(),
            detail: match n0 {
                Some(n0) if failing_ns.is_empty() => format!("hold for every swept n >= {n0}"),
                Some(n0) => format!(
                    "fail for {} degrees, hold for every swept n >= {n0}",
                    failing_ns.len()
                ),
                None => "fail at the largest swept degree".to_string(),
            },
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(HypothesisReport {
        function: f.name().to_string(),
        s,
        checks,
        n0,
        violations,
        passed,
    })
}
