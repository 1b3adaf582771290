//! Classical and integer-coefficient Bernstein operators.
//!
//! A model of degree `n` stores the coefficients `c_k` of
//! `sum_k c_k p_{n,k}(x)`, `p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)`:
//!
//! - classic: `c_k = f(k/n)`
//! - floor: `c_k = [f(k/n) C(n,k)] / C(n,k)`
//! - nearest: `c_k = <f(k/n) C(n,k)> / C(n,k)`
//!
//! Derivatives stay in Bernstein form: the `s`-th derivative has degree
//! `n - s` and coefficients `n!/(n-s)! * Δ^s c_k`. The differences are taken
//! with unit index step on the coefficient sequence; for the classic model
//! this equals the real-step difference `Δ^s_{1/n} f(k/n)` because
//! `c_k = f(k/n)`, so one formula serves all three kinds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::analysis::{sup_norm, GridConfig, Interval, RealFunction, SupEstimate};
use crate::corpus::{Endpoint, FunctionSpec, Sample};
use crate::error::{Error, Result};
use crate::exact::{
    binomial, falling_factorial, guarded_round, rational_to_f64, round_exact, ArbitraryInteger,
    BinomialRow, ExactRational, PrecisionSchedule, RoundingMode, TiePolicy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Classic,
    FloorInt,
    NearestInt(TiePolicy),
}

impl OperatorKind {
    pub fn rounding(self) -> Option<RoundingMode> {
        match self {
            OperatorKind::Classic => None,
            OperatorKind::FloorInt => Some(RoundingMode::Floor),
            OperatorKind::NearestInt(p) => Some(RoundingMode::Nearest(p)),
        }
    }

    pub fn is_integer(self) -> bool {
        self != OperatorKind::Classic
    }

    /// Short name used on the command line: `classic`, `floor`, `nearest`.
    pub fn label(self) -> &'static str {
        match self {
            OperatorKind::Classic => "classic",
            OperatorKind::FloorInt => "floor",
            OperatorKind::NearestInt(_) => "nearest",
        }
    }

    /// Parses a kind label; `nearest` takes the supplied tie policy.
    pub fn parse(label: &str, tie: TiePolicy) -> Result<Self> {
        match label {
            "classic" => Ok(OperatorKind::Classic),
            "floor" => Ok(OperatorKind::FloorInt),
            "nearest" => Ok(OperatorKind::NearestInt(tie)),
            other => Err(Error::invalid(format!("unknown operator kind `{other}`"))),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::NearestInt(p) => write!(f, "nearest[{p}]"),
            other => f.write_str(other.label()),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::parse(s, TiePolicy::default())
    }
}

/// Polynomial in the degree-`m` Bernstein basis, `m = coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly {
    coeffs: Vec<ExactRational>,
    float_coeffs: Vec<f64>,
}

impl BernsteinPoly {
    pub fn new(coeffs: Vec<ExactRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("Bernstein polynomial needs at least one coefficient"));
        }
        let float_coeffs = coeffs.iter().map(rational_to_f64).collect();
        Ok(BernsteinPoly {
            coeffs,
            float_coeffs,
        })
    }

    /// Identically zero, degree 0.
    pub fn zero() -> Self {
        BernsteinPoly {
            coeffs: vec![BigRational::zero()],
            float_coeffs: vec![0.0],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn float_coeffs(&self) -> &[f64] {
        &self.float_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::invalid(format!("evaluation point {x} outside [0, 1]")));
        }
        Ok(self.eval_unchecked(x))
    }

    /// Triangle (de Casteljau) recurrence: every step is a convex
    /// combination of neighbours, so no cancellation occurs on `[0, 1]`.
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let mut work = self.float_coeffs.clone();
        let y = 1.0 - x;
        for len in (1..work.len()).rev() {
            for j in 0..len {
                work[j] = y * work[j] + x * work[j + 1];
            }
        }
        work[0]
    }

    /// Exact value at rational `x = a/b`:
    /// `sum_k c_k C(m,k) a^k (b-a)^(m-k) / b^m`, summed over a common
    /// denominator in integer arithmetic.
    pub fn evaluate_exact(&self, x: &ExactRational) -> Result<ExactRational> {
        if x.is_negative() || x > &BigRational::one() {
            return Err(Error::invalid(format!("evaluation point {x} outside [0, 1]")));
        }
        let m = self.degree();
        let row = BinomialRow::new(m);
        let weights: Vec<ExactRational> = self
            .coeffs
            .iter()
            .zip(row.as_slice())
            .map(|(c, b)| c * BigRational::from_integer(b.clone()))
            .collect();
        let common = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let a = x.numer().clone();
        let b = x.denom().clone();
        let c = &b - &a;
        let mut powers_c = Vec::with_capacity(m + 1);
        powers_c.push(BigInt::one());
        for j in 0..m {
            let next = &powers_c[j] * &c;
            powers_c.push(next);
        }
        let mut sum = BigInt::zero();
        let mut power_a = BigInt::one();
        for (k, w) in weights.iter().enumerate() {
            if !w.is_zero() {
                let scaled = w.numer() * (&common / w.denom());
                sum += scaled * &power_a * &powers_c[m - k];
            }
            power_a *= &a;
        }
        let denom = common * num_traits::pow(b, m);
        Ok(BigRational::new(sum, denom))
    }

    /// `s`-th derivative: degree `m - s`, coefficients `m!/(m-s)! Δ^s c_k`,
    /// with `Δ^s` applied as `s` successive first differences.
    pub fn derivative(&self, s: usize) -> Result<BernsteinPoly> {
        let m = self.degree();
        if s > m {
            return Err(Error::invalid(format!(
                "derivative order {s} exceeds degree {m}"
            )));
        }
        let mut diffs = self.coeffs.clone();
        for _ in 0..s {
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let factor = BigRational::from_integer(falling_factorial(m, s));
        BernsteinPoly::new(diffs.into_iter().map(|d| d * &factor).collect())
    }

    /// Same polynomial written in degree `target >= degree()`.
    pub fn elevate(&self, target: usize) -> Result<BernsteinPoly> {
        if target < self.degree() {
            return Err(Error::invalid(format!(
                "cannot elevate degree {} to {target}",
                self.degree()
            )));
        }
        let mut coeffs = self.coeffs.clone();
        for m in self.degree()..target {
            // degree m -> m + 1
            let m1 = BigInt::from(m + 1);
            let mut next = Vec::with_capacity(m + 2);
            next.push(coeffs[0].clone());
            for k in 1..=m {
                let w = BigRational::new(BigInt::from(k), m1.clone());
                next.push(&w * &coeffs[k - 1] + (BigRational::one() - &w) * &coeffs[k]);
            }
            next.push(coeffs[m].clone());
            coeffs = next;
        }
        BernsteinPoly::new(coeffs)
    }

    /// `self - other` after raising both to the larger degree.
    pub fn sub(&self, other: &BernsteinPoly) -> Result<BernsteinPoly> {
        let m = self.degree().max(other.degree());
        let a = self.elevate(m)?;
        let b = other.elevate(m)?;
        BernsteinPoly::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect())
    }
}

impl RealFunction for BernsteinPoly {
    fn value(&self, x: f64) -> f64 {
        self.eval_unchecked(x.clamp(0.0, 1.0))
    }
}

/// Exact or certified value of `f(k/n) C(n,k)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ScaledSample {
    Exact(ExactRational),
    Approx { value: ExactRational, err: ExactRational },
}

/// One row of the coefficient construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub k: usize,
    pub node: ExactRational,
    pub binomial: ArbitraryInteger,
    pub scaled: ScaledSample,
    /// `[f(k/n) C(n,k)]` or `<f(k/n) C(n,k)>`; `None` for the classic kind.
    pub rounded: Option<ArbitraryInteger>,
    pub coeff: ExactRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinModel {
    kind: OperatorKind,
    n: usize,
    poly: BernsteinPoly,
    rows: Vec<CoefficientRow>,
}

impl BernsteinModel {
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        self.poly.coeffs()
    }

    pub fn float_coeffs(&self) -> &[f64] {
        self.poly.float_coeffs()
    }

    pub fn poly(&self) -> &BernsteinPoly {
        &self.poly
    }

    pub fn rows(&self) -> &[CoefficientRow] {
        &self.rows
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.poly.evaluate(x)
    }

    pub fn evaluate_exact(&self, x: &ExactRational) -> Result<ExactRational> {
        self.poly.evaluate_exact(x)
    }
}

pub fn build_model(f: &FunctionSpec, n: usize, kind: OperatorKind) -> Result<BernsteinModel> {
    build_model_with(f, n, kind, PrecisionSchedule::default())
}

/// [`build_model`] with an explicit precision ladder. The working precision
/// counts bits after scaling by `C(n,k)`.
pub fn build_model_with(
    f: &FunctionSpec,
    n: usize,
    kind: OperatorKind,
    schedule: PrecisionSchedule,
) -> Result<BernsteinModel> {
    if n == 0 {
        return Err(Error::invalid("degree n must be at least 1"));
    }
    let binomials = BinomialRow::new(n);
    let n_big = BigInt::from(n);
    let mut rows = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let node = BigRational::new(BigInt::from(k), n_big.clone());
        let c = binomials.get(k).clone();
        let c_rat = BigRational::from_integer(c.clone());
        let headroom = c.bits() as u32;
        let mut result = None;
        let mut last_bits = schedule.start_bits;
        for bits in schedule.steps() {
            last_bits = bits;
            let sample = f.sample(&node, bits + headroom).scale(&c_rat);
            let scaled = match sample {
                Sample::Exact(v) => ScaledSample::Exact(v),
                Sample::Approx { value, err } => ScaledSample::Approx { value, err },
            };
            let rounded = match (kind.rounding(), &scaled) {
                (None, _) => None,
                (Some(mode), ScaledSample::Exact(v)) => Some(round_exact(v, mode)),
                (Some(mode), ScaledSample::Approx { value, err }) => {
                    match guarded_round(value, err, mode) {
                        Ok(r) => Some(r),
                        Err(Error::PrecisionInsufficient) => continue,
                        Err(e) => return Err(e),
                    }
                }
            };
            let coeff = match &rounded {
                Some(r) => BigRational::new(r.clone(), c.clone()),
                None => match &scaled {
                    ScaledSample::Exact(v) | ScaledSample::Approx { value: v, .. } => v / &c_rat,
                },
            };
            result = Some(CoefficientRow {
                k,
                node: node.clone(),
                binomial: c.clone(),
                scaled,
                rounded,
                coeff,
            });
            break;
        }
        match result {
            Some(row) => rows.push(row),
            None => {
                return Err(Error::PrecisionExhausted {
                    k,
                    bits: last_bits,
                })
            }
        }
    }
    let poly = BernsteinPoly::new(rows.iter().map(|r| r.coeff.clone()).collect())?;
    Ok(BernsteinModel {
        kind,
        n,
        poly,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffStep {
    /// Unit step on a coefficient sequence.
    Index,
    /// Step `1/n` on samples `f(k/n)`.
    Real { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffTable {
    pub order: usize,
    pub step: DiffStep,
    pub values: Vec<ExactRational>,
}

/// `Δ^s v(k) = sum_{i=0}^{s} (-1)^i C(s,i) v(k+s-i)` for
/// `k = 0, ..., len-1-s`, in expanded form.
pub fn finite_difference(values: &[ExactRational], s: usize) -> Result<DiffTable> {
    if s == 0 {
        return Err(Error::invalid("difference order must be at least 1"));
    }
    if values.len() < s + 1 {
        return Err(Error::invalid(format!(
            "sequence of length {} too short for order-{s} differences",
            values.len()
        )));
    }
    let weights: Vec<ExactRational> = (0..=s)
        .map(|i| {
            let c = binomial(s as u64, i as u64).expect("i <= s");
            let c = BigRational::from_integer(c);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let out = (0..values.len() - s)
        .map(|k| {
            weights
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (i, w)| acc + w * &values[k + s - i])
        })
        .collect();
    Ok(DiffTable {
        order: s,
        step: DiffStep::Index,
        values: out,
    })
}

/// `Δ^s_{1/n} f(k/n)` for `k = 0, ..., n-s`, from exact samples of `f`.
pub fn sample_differences(f: &FunctionSpec, n: usize, s: usize) -> Result<DiffTable> {
    let samples: Vec<ExactRational> = (0..=n)
        .map(|k| {
            let x = BigRational::new(BigInt::from(k), BigInt::from(n));
            f.eval_exact(&x).ok_or_else(|| {
                Error::capability("operators", format!("`{f}` has no exact value at {x}"))
            })
        })
        .collect::<Result<_>>()?;
    let mut table = finite_difference(&samples, s)?;
    table.step = DiffStep::Real { n };
    Ok(table)
}

/// `(model)^(s)` as a degree `n - s` Bernstein polynomial.
pub fn derivative_model(model: &BernsteinModel, s: usize) -> Result<BernsteinPoly> {
    if s == 0 {
        return Ok(model.poly.clone());
    }
    model.poly.derivative(s)
}

/// Like [`derivative_model`], but `s > n` yields the zero polynomial; used by
/// sweeps that start below the derivative order.
pub fn derivative_or_zero(model: &BernsteinModel, s: usize) -> Result<BernsteinPoly> {
    if s > model.degree() {
        Ok(BernsteinPoly::zero())
    } else {
        derivative_model(model, s)
    }
}

fn require_integer_endpoints(f: &FunctionSpec) -> Result<()> {
    for side in [Endpoint::Left, Endpoint::Right] {
        match f.endpoint(0, side) {
            Some(v) if v.is_integer() => {}
            Some(v) => {
                return Err(Error::HypothesisViolation(format!(
                    "f({}) = {v} is not an integer",
                    side.point()
                )))
            }
            None => {
                return Err(Error::capability(
                    "operators",
                    format!("`{f}` has no exact endpoint values"),
                ))
            }
        }
    }
    Ok(())
}

fn integer_kind(kind: OperatorKind) -> Result<()> {
    if kind.is_integer() {
        Ok(())
    } else {
        Err(Error::invalid("expected an integer-coefficient operator kind"))
    }
}

/// `B^int_n(f) - B_n f` in Bernstein form.
pub fn proximity_poly(f: &FunctionSpec, n: usize, kind: OperatorKind) -> Result<BernsteinPoly> {
    integer_kind(kind)?;
    require_integer_endpoints(f)?;
    let integer = build_model(f, n, kind)?;
    let classic = build_model(f, n, OperatorKind::Classic)?;
    integer.poly.sub(&classic.poly)
}

/// Grid estimate of `||B^int_n(f) - B_n f||` on `[0, 1]`.
pub fn proximity_gap(
    f: &FunctionSpec,
    n: usize,
    kind: OperatorKind,
    grid: &GridConfig,
) -> Result<SupEstimate> {
    let gap = proximity_poly(f, n, kind)?;
    if gap.is_zero() {
        return Ok(SupEstimate::exact_zero());
    }
    sup_norm(&gap, Interval::unit(), grid)
}

/// Exact maximum of `|B^int_n(f) - B_n f|` over the given rational points.
pub fn proximity_gap_exact(
    f: &FunctionSpec,
    n: usize,
    kind: OperatorKind,
    points: &[ExactRational],
) -> Result<ExactRational> {
    let gap = proximity_poly(f, n, kind)?;
    points.iter().try_fold(BigRational::zero(), |acc, x| {
        let v = gap.evaluate_exact(x)?.abs();
        Ok(if v > acc { v } else { acc })
    })
}
