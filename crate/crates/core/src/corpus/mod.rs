//! Test functions with exact evaluation, derivative oracles and the endpoint
//! metadata the hypotheses are phrased in.
//!
//! Two families are available: polynomials with exact rational
//! coefficients (evaluated exactly at rational points) and the kink family
//! `|2x - 1|^gamma + p x + q`, whose values at rational points are produced
//! to a requested number of bits with a certified error bound.

mod polynomial;

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::analysis::{self, HypothesisReport, RealFunction};
use crate::error::{Error, Result};
use crate::exact::{integer_root, parse_rational, ratio, rational_to_f64, ExactRational};

pub use polynomial::Polynomial;

/// Half-width of the window around the kink where piecewise derivatives
/// are refused.
pub const KINK_WINDOW_HALF_WIDTH: f64 = 5e-7;

/// Value of `f` at a rational point: exact, or a rational approximation
/// with a certified absolute error bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Exact(ExactRational),
    Approx {
        value: ExactRational,
        err: ExactRational,
    },
}

impl Sample {
    pub fn value(&self) -> &ExactRational {
        match self {
            Sample::Exact(v) | Sample::Approx { value: v, .. } => v,
        }
    }

    pub fn error_bound(&self) -> ExactRational {
        match self {
            Sample::Exact(_) => BigRational::zero(),
            Sample::Approx { err, .. } => err.clone(),
        }
    }

    pub fn scale(&self, factor: &ExactRational) -> Sample {
        match self {
            Sample::Exact(v) => Sample::Exact(v * factor),
            Sample::Approx { value, err } => Sample::Approx {
                value: value * factor,
                err: err * factor.abs(),
            },
        }
    }

    pub fn add_exact(&self, term: &ExactRational) -> Sample {
        match self {
            Sample::Exact(v) => Sample::Exact(v + term),
            Sample::Approx { value, err } => Sample::Approx {
                value: value + term,
                err: err.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Left,
    Right,
}

impl Endpoint {
    pub fn point(self) -> f64 {
        match self {
            Endpoint::Left => 0.0,
            Endpoint::Right => 1.0,
        }
    }
}

/// `|2x - 1|^gamma + p x + q` with `gamma` in `(0, 2)`.
///
/// The endpoint values `1 + q` and `1 + p + q` are integers. The function is
/// `C^0` for `gamma <= 1` and `C^1` for `1 < gamma < 2`; away from `x = 1/2`
/// it is analytic.
#[derive(Debug, Clone, PartialEq)]
pub struct KinkFunction {
    gamma: ExactRational,
    gamma_f64: f64,
    p: BigInt,
    q: BigInt,
}

impl KinkFunction {
    pub fn new(gamma: ExactRational, p: BigInt, q: BigInt) -> Result<Self> {
        if !gamma.is_positive() || gamma >= ratio(2, 1) {
            return Err(Error::invalid(format!(
                "kink exponent must lie in (0, 2), got {gamma}"
            )));
        }
        if gamma.denom().bits() > 32 {
            return Err(Error::invalid("kink exponent denominator too large"));
        }
        Ok(KinkFunction {
            gamma_f64: rational_to_f64(&gamma),
            gamma,
            p,
            q,
        })
    }

    pub fn gamma(&self) -> &ExactRational {
        &self.gamma
    }

    pub fn smoothness(&self) -> usize {
        if self.gamma > ratio(1, 1) {
            1
        } else {
            0
        }
    }

    fn linear_part(&self, x: &ExactRational) -> ExactRational {
        BigRational::from_integer(self.p.clone()) * x + BigRational::from_integer(self.q.clone())
    }

    /// `|2x - 1|^gamma` at rational `x`, exact when the power is rational.
    fn power_sample(&self, x: &ExactRational, bits: u32) -> Sample {
        let u = (x * BigInt::from(2) - BigInt::one()).abs();
        if u.is_zero() {
            return Sample::Exact(BigRational::zero());
        }
        let a = self.gamma.numer().to_u32().expect("gamma numerator fits u32");
        let b = self.gamma.denom().to_u32().expect("gamma denominator fits u32");
        let num = u.numer().magnitude().pow(a);
        let den = u.denom().magnitude().pow(a);
        if b == 1 {
            return Sample::Exact(BigRational::new(num.into(), den.into()));
        }
        // (N/D)^(1/b) = (N D^(b-1))^(1/b) / D, scaled by 2^bits before the root.
        let radicand: BigUint = &num * den.pow(b - 1) << (bits as usize * b as usize);
        let (root, exact) = integer_root(&radicand, b);
        let scale = BigInt::from_biguint(Sign::Plus, den << bits as usize);
        let root = BigInt::from_biguint(Sign::Plus, root);
        if exact {
            Sample::Exact(BigRational::new(root, scale))
        } else {
            Sample::Approx {
                value: BigRational::new(root * 2 + 1, scale.clone() * 2),
                err: BigRational::new(BigInt::one(), scale * 2),
            }
        }
    }

    fn sample(&self, x: &ExactRational, bits: u32) -> Sample {
        self.power_sample(x, bits).add_exact(&self.linear_part(x))
    }

    fn eval(&self, x: f64) -> f64 {
        (2.0 * x - 1.0).abs().powf(self.gamma_f64) + self.p_f64() * x + self.q_f64()
    }

    fn eval_bound(&self, x: f64) -> f64 {
        let magnitude = (2.0 * x - 1.0).abs().powf(self.gamma_f64)
            + (self.p_f64() * x).abs()
            + self.q_f64().abs();
        8.0 * f64::EPSILON * magnitude + f64::MIN_POSITIVE
    }

    fn p_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN)
    }

    fn q_f64(&self) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN)
    }

    /// Falling product `gamma (gamma - 1) ... (gamma - i + 1)`.
    fn falling_gamma(&self, i: usize) -> ExactRational {
        (0..i).fold(BigRational::one(), |acc, j| {
            acc * (&self.gamma - BigRational::from_integer(BigInt::from(j)))
        })
    }

    fn deriv(&self, i: usize, x: f64) -> Result<f64> {
        let u = 2.0 * x - 1.0;
        if i > self.smoothness() && u.abs() < 2.0 * KINK_WINDOW_HALF_WIDTH {
            return Err(Error::capability(
                "corpus",
                format!("derivative of order {i} is undefined near the kink at x = 1/2"),
            ));
        }
        if i == 0 {
            return Ok(self.eval(x));
        }
        let coeff = rational_to_f64(&self.falling_gamma(i)) * 2f64.powi(i as i32);
        let sign = if u < 0.0 && i % 2 == 1 { -1.0 } else { 1.0 };
        let power = if u == 0.0 {
            0.0
        } else {
            u.abs().powf(self.gamma_f64 - i as f64)
        };
        let linear = if i == 1 { self.p_f64() } else { 0.0 };
        Ok(coeff * sign * power + linear)
    }

    fn endpoint(&self, i: usize, side: Endpoint) -> ExactRational {
        // At the endpoints |2x-1| = 1 and the sign of 2x-1 is -1 / +1.
        let base = self.falling_gamma(i) * BigRational::from_integer(BigInt::from(2).pow(i as u32));
        let sign_flip = side == Endpoint::Left && i % 2 == 1;
        let power_term = if sign_flip { -base } else { base };
        let x = match side {
            Endpoint::Left => BigRational::zero(),
            Endpoint::Right => BigRational::one(),
        };
        match i {
            0 => power_term + self.linear_part(&x),
            1 => power_term + BigRational::from_integer(self.p.clone()),
            _ => power_term,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Body {
    Polynomial(Polynomial),
    Kink(KinkFunction),
}

/// A test function together with its oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    name: String,
    body: Body,
}

impl FunctionSpec {
    /// Wraps an arbitrary exact polynomial; the entry point for custom
    /// functions.
    pub fn polynomial(name: impl Into<String>, poly: Polynomial) -> Self {
        FunctionSpec {
            name: name.into(),
            body: Body::Polynomial(poly),
        }
    }

    pub fn kink(name: impl Into<String>, kink: KinkFunction) -> Self {
        FunctionSpec {
            name: name.into(),
            body: Body::Kink(kink),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match &self.body {
            Body::Polynomial(p) => Some(p),
            Body::Kink(_) => None,
        }
    }

    /// Largest `s` with `f` in `C^s[0,1]`; `None` means every order.
    pub fn s_max(&self) -> Option<usize> {
        match &self.body {
            Body::Polynomial(_) => None,
            Body::Kink(k) => Some(k.smoothness()),
        }
    }

    pub fn supports_order(&self, s: usize) -> bool {
        self.s_max().is_none_or(|m| s <= m)
    }

    /// Exact value at a rational point, when the function has one there.
    pub fn eval_exact(&self, x: &ExactRational) -> Option<ExactRational> {
        match &self.body {
            Body::Polynomial(p) => Some(p.eval_exact(x)),
            Body::Kink(k) => match k.sample(x, 0) {
                Sample::Exact(v) => Some(v),
                Sample::Approx { .. } => None,
            },
        }
    }

    /// Value at a rational point with absolute error at most `2^-bits`.
    pub fn sample(&self, x: &ExactRational, bits: u32) -> Sample {
        match &self.body {
            Body::Polynomial(p) => Sample::Exact(p.eval_exact(x)),
            Body::Kink(k) => k.sample(x, bits),
        }
    }

    /// Double-precision value and a bound on its error.
    pub fn eval_float(&self, x: f64) -> (f64, f64) {
        match &self.body {
            Body::Polynomial(p) => (p.eval(x), p.eval_bound(x)),
            Body::Kink(k) => (k.eval(x), k.eval_bound(x)),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.eval_float(x).0
    }

    /// `f^(i)(x)`. Orders up to `s_max` are available everywhere; higher
    /// orders of piecewise-smooth entries only away from the kink.
    pub fn deriv(&self, i: usize, x: f64) -> Result<f64> {
        match &self.body {
            Body::Polynomial(p) => Ok(p.derivative(i).eval(x)),
            Body::Kink(k) => k.deriv(i, x),
        }
    }

    pub fn deriv_exact(&self, i: usize, x: &ExactRational) -> Option<ExactRational> {
        self.as_polynomial().map(|p| p.derivative(i).eval_exact(x))
    }

    /// Exact `f^(i)` at `0` or `1`.
    pub fn endpoint(&self, i: usize, side: Endpoint) -> Option<ExactRational> {
        match &self.body {
            Body::Polynomial(p) => {
                let x = match side {
                    Endpoint::Left => BigRational::zero(),
                    Endpoint::Right => BigRational::one(),
                };
                Some(p.derivative(i).eval_exact(&x))
            }
            Body::Kink(k) => Some(k.endpoint(i, side)),
        }
    }

    pub fn integer_endpoints(&self) -> bool {
        [Endpoint::Left, Endpoint::Right]
            .into_iter()
            .all(|side| self.endpoint(0, side).is_some_and(|v| v.is_integer()))
    }

    /// `f = px + q` with integer `p, q`.
    pub fn integer_linear(&self) -> bool {
        self.as_polynomial().is_some_and(Polynomial::is_integer_linear)
    }

    /// `f^(i)` as a real function; polynomial entries return the exact
    /// derivative polynomial.
    pub fn derivative_fn(&self, i: usize) -> Result<DerivativeFn<'_>> {
        if !self.supports_order(i) {
            return Err(Error::capability(
                "corpus",
                format!(
                    "`{}` has no continuous derivative of order {i} (s_max = {})",
                    self.name,
                    self.s_max().unwrap_or(0)
                ),
            ));
        }
        Ok(match &self.body {
            Body::Polynomial(p) => DerivativeFn::Poly(p.derivative(i)),
            Body::Kink(k) => DerivativeFn::Kink { kink: k, order: i },
        })
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl RealFunction for FunctionSpec {
    fn value(&self, x: f64) -> f64 {
        FunctionSpec::value(self, x)
    }

    fn second_difference(&self, x: f64, d: f64) -> f64 {
        match &self.body {
            Body::Polynomial(p) => p.second_difference(x, d),
            Body::Kink(k) => k.eval(x + d) - 2.0 * k.eval(x) + k.eval(x - d),
        }
    }
}

/// `f^(s)` of a corpus entry, usable wherever a [`RealFunction`] is.
#[derive(Debug, Clone)]
pub enum DerivativeFn<'a> {
    Poly(Polynomial),
    Kink { kink: &'a KinkFunction, order: usize },
}

impl RealFunction for DerivativeFn<'_> {
    fn value(&self, x: f64) -> f64 {
        match self {
            DerivativeFn::Poly(p) => p.eval(x),
            // Orders here never exceed the smoothness, so this cannot fail.
            DerivativeFn::Kink { kink, order } => kink.deriv(*order, x).unwrap_or(f64::NAN),
        }
    }

    fn second_difference(&self, x: f64, d: f64) -> f64 {
        match self {
            DerivativeFn::Poly(p) => p.second_difference(x, d),
            DerivativeFn::Kink { .. } => self.value(x + d) - 2.0 * self.value(x) + self.value(x - d),
        }
    }
}

/// A built-in function plus what it is for.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: FunctionSpec,
    pub doc: &'static str,
    /// Derivative order the entry is meant to be used with.
    pub declared_s: usize,
    pub experiments: &'static [&'static str],
}

/// Grammar accepted by [`builtin`], for listings.
pub const FAMILIES: &[(&str, &str)] = &[
    ("integer_linear(p,q)", "p x + q with integer p, q; the trivial class"),
    ("monomial(m)", "x^m, m >= 2; alias x^m"),
    (
        "poly_boundary_flat(s[,p,q])",
        "x^(s+1) (1-x)^(s+1) + p x + q, default p = 1, q = 0; f^(i)(0) = f^(i)(1) = 0 for i = 2..s",
    ),
    (
        "holder_interior(gamma[,p,q])",
        "|2x-1|^gamma + p x + q, gamma in (0,2) not an integer, default p = q = 0",
    ),
    ("abs_shift", "|2x-1|, Lipschitz with an interior kink"),
];

fn parse_call(name: &str) -> Result<(&str, Vec<&str>)> {
    let name = name.trim();
    match name.split_once('(') {
        None => Ok((name, Vec::new())),
        Some((head, rest)) => {
            let args = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Lookup(format!("{name} (unbalanced parentheses)")))?;
            let args = if args.trim().is_empty() {
                Vec::new()
            } else {
                args.split(',').map(str::trim).collect()
            };
            Ok((head.trim(), args))
        }
    }
}

fn int_arg(name: &str, arg: &str) -> Result<BigInt> {
    arg.parse()
        .map_err(|_| Error::invalid(format!("{name}: `{arg}` is not an integer")))
}

fn usize_arg(name: &str, arg: &str) -> Result<usize> {
    arg.parse()
        .map_err(|_| Error::invalid(format!("{name}: `{arg}` is not a nonnegative integer")))
}

/// Instantiates a built-in function by name, e.g. `monomial(3)` or
/// `holder_interior(3/2)`.
pub fn builtin(name: &str) -> Result<FunctionSpec> {
    if let Some(m) = name.trim().strip_prefix("x^") {
        return builtin(&format!("monomial({m})"));
    }
    let (head, args) = parse_call(name)?;
    let arity = |allowed: &[usize]| -> Result<()> {
        if allowed.contains(&args.len()) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "{head}: expected {allowed:?} arguments, got {}",
                args.len()
            )))
        }
    };
    match head {
        "integer_linear" => {
            arity(&[2])?;
            let p = int_arg(head, args[0])?;
            let q = int_arg(head, args[1])?;
            let poly = Polynomial::new(vec![
                BigRational::from_integer(q.clone()),
                BigRational::from_integer(p.clone()),
            ]);
            Ok(FunctionSpec::polynomial(format!("integer_linear({p},{q})"), poly))
        }
        "monomial" => {
            arity(&[1])?;
            let m = usize_arg(head, args[0])?;
            if m < 2 {
                return Err(Error::invalid("monomial: exponent must be at least 2"));
            }
            Ok(FunctionSpec::polynomial(
                format!("monomial({m})"),
                Polynomial::monomial(m),
            ))
        }
        "poly_boundary_flat" => {
            arity(&[1, 3])?;
            let s = usize_arg(head, args[0])?;
            let (p, q) = if args.len() == 3 {
                (int_arg(head, args[1])?, int_arg(head, args[2])?)
            } else {
                (BigInt::one(), BigInt::zero())
            };
            let bump = Polynomial::monomial(s + 1).mul(&Polynomial::from_integers(&[1, -1]).pow(s + 1));
            let linear = Polynomial::new(vec![
                BigRational::from_integer(q.clone()),
                BigRational::from_integer(p.clone()),
            ]);
            Ok(FunctionSpec::polynomial(
                format!("poly_boundary_flat({s},{p},{q})"),
                bump.add(&linear),
            ))
        }
        "holder_interior" => {
            arity(&[1, 3])?;
            let gamma = parse_rational(args[0])?;
            if gamma.is_integer() {
                return Err(Error::invalid("holder_interior: gamma must not be an integer"));
            }
            let (p, q) = if args.len() == 3 {
                (int_arg(head, args[1])?, int_arg(head, args[2])?)
            } else {
                (BigInt::zero(), BigInt::zero())
            };
            let label = format!("holder_interior({}/{},{p},{q})", gamma.numer(), gamma.denom());
            Ok(FunctionSpec::kink(label, KinkFunction::new(gamma, p, q)?))
        }
        "abs_shift" => {
            arity(&[0])?;
            let kink = KinkFunction::new(ratio(1, 1), BigInt::zero(), BigInt::zero())?;
            Ok(FunctionSpec::kink("abs_shift", kink))
        }
        _ => Err(Error::Lookup(name.to_string())),
    }
}

/// The fixed set of entries used by the experiments and the acceptance run.
pub fn catalog() -> Vec<CorpusEntry> {
    let entry = |name: &str, doc, declared_s, experiments| CorpusEntry {
        spec: builtin(name).expect("catalog names are valid"),
        doc,
        declared_s,
        experiments,
    };
    vec![
        entry(
            "integer_linear(3,2)",
            "integer-linear function; reproduced exactly by all three operators",
            1,
            &["coeffs", "saturation", "boundary"],
        ),
        entry(
            "integer_linear(-2,1)",
            "integer-linear function with negative slope",
            1,
            &["coeffs", "saturation"],
        ),
        entry(
            "monomial(2)",
            "x^2; B_n x^2 - x^2 = x(1-x)/n exactly, saturated at rate 1/n",
            1,
            &["proximity", "rate", "saturation", "boundary", "converse"],
        ),
        entry(
            "monomial(3)",
            "x^3; Voronovskaya limit 3x^2(1-x)",
            1,
            &["proximity", "voronovskaya", "rate"],
        ),
        entry(
            "monomial(4)",
            "x^4",
            1,
            &["proximity", "rate"],
        ),
        entry(
            "poly_boundary_flat(1)",
            "x^2 (1-x)^2 + x",
            1,
            &["proximity", "rate", "converse"],
        ),
        entry(
            "poly_boundary_flat(2)",
            "x^3 (1-x)^3 + x; second derivative vanishes at both endpoints",
            2,
            &["proximity", "characterization", "converse"],
        ),
        entry(
            "holder_interior(1/2)",
            "|2x-1|^(1/2); Hölder-1/2 kink, rate slower than 1/n",
            0,
            &["proximity", "rate", "modulus"],
        ),
        entry(
            "holder_interior(3/2)",
            "|2x-1|^(3/2); C^1 with a Hölder-1/2 first derivative",
            1,
            &["proximity", "converse", "modulus"],
        ),
        entry(
            "abs_shift",
            "|2x-1|; Lipschitz kink at 1/2",
            0,
            &["proximity", "rate", "modulus"],
        ),
    ]
}

/// Checks the hypotheses for derivative order `s` over `n_range`.
pub fn validate(
    spec: &FunctionSpec,
    s: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<HypothesisReport> {
    if !spec.supports_order(s) {
        return Err(Error::capability(
            "corpus",
            format!(
                "`{}` supports derivative orders up to {}, requested {s}",
                spec.name(),
                spec.s_max().unwrap_or(0)
            ),
        ));
    }
    analysis::hypothesis_check(spec, s, n_range)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_linear_entry() {
        let f = builtin("integer_linear(3,2)").unwrap();
        assert_eq!(f.eval_exact(&ratio(1, 4)).unwrap(), ratio(11, 4));
        assert!(f.integer_linear());
        assert!(f.integer_endpoints());
    }

    #[test]
    fn square_endpoint_data() {
        let f = builtin("monomial(2)").unwrap();
        assert_eq!(f.endpoint(0, Endpoint::Left).unwrap(), ratio(0, 1));
        assert_eq!(f.endpoint(0, Endpoint::Right).unwrap(), ratio(1, 1));
        assert_eq!(f.endpoint(1, Endpoint::Left).unwrap(), ratio(0, 1));
        assert_eq!(f.endpoint(1, Endpoint::Right).unwrap(), ratio(2, 1));
        assert!(!f.integer_linear());
        assert_eq!(builtin("x^2").unwrap(), f);
    }

    #[test]
    fn boundary_flat_two_has_flat_second_derivative() {
        let f = builtin("poly_boundary_flat(2)").unwrap();
        assert_eq!(f.name(), "poly_boundary_flat(2,1,0)");
        // Oracle: expanded x^3 (1-x)^3 = x^3 - 3x^4 + 3x^5 - x^6, plus x.
        let expected = Polynomial::from_integers(&[0, 1, 0, 1, -3, 3, -1]);
        assert_eq!(f.as_polynomial().unwrap(), &expected);
        assert_eq!(f.endpoint(2, Endpoint::Left).unwrap(), ratio(0, 1));
        assert_eq!(f.endpoint(2, Endpoint::Right).unwrap(), ratio(0, 1));
        assert_eq!(f.endpoint(1, Endpoint::Left).unwrap(), ratio(1, 1));
    }

    #[test]
    fn kink_samples_are_certified() {
        let f = builtin("holder_interior(1/2)").unwrap();
        assert_eq!(f.s_max(), Some(0));
        // |2/4 - 1|^(1/2) = sqrt(1/2), irrational.
        let s = f.sample(&ratio(1, 4), 128);
        let exact = std::f64::consts::FRAC_1_SQRT_2;
        match &s {
            Sample::Approx { value, err } => {
                assert!((rational_to_f64(value) - exact).abs() < 1e-15);
                assert!(err < &ratio(1, 1 << 62));
            }
            Sample::Exact(_) => panic!("sqrt(1/2) is irrational"),
        }
        // |2*(5/8) - 1|^(1/2) = 1/2 exactly.
        assert_eq!(f.sample(&ratio(5, 8), 128), Sample::Exact(ratio(1, 2)));
        assert!(f.integer_endpoints());
    }

    #[test]
    fn kink_derivatives_and_window() {
        let f = builtin("holder_interior(3/2)").unwrap();
        assert_eq!(f.s_max(), Some(1));
        // f'(x) = 3 sign(2x-1) |2x-1|^(1/2)
        assert!((f.deriv(1, 0.0).unwrap() + 3.0).abs() < 1e-15);
        assert_eq!(f.deriv(1, 0.5).unwrap(), 0.0);
        assert_eq!(f.endpoint(1, Endpoint::Left).unwrap(), ratio(-3, 1));
        assert_eq!(f.endpoint(1, Endpoint::Right).unwrap(), ratio(3, 1));
        assert!(f.deriv(2, 0.5).is_err());
        assert!(f.deriv(2, 0.5 + 1e-3).is_ok());
        assert!(f.derivative_fn(2).is_err());
    }

    #[test]
    fn abs_shift_is_exact_at_rationals() {
        let f = builtin("abs_shift").unwrap();
        assert_eq!(f.eval_exact(&ratio(1, 8)).unwrap(), ratio(3, 4));
        assert!(f.integer_endpoints());
        assert!(!f.integer_linear());
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(builtin("sin"), Err(Error::Lookup(_))));
        assert!(builtin("monomial(1)").is_err());
        assert!(builtin("holder_interior(1)").is_err());
        assert!(builtin("holder_interior(5/2)").is_err());
        assert!(builtin("integer_linear(1)").is_err());
    }

    #[test]
    fn validate_refuses_unsupported_order() {
        let f = builtin("abs_shift").unwrap();
        assert!(matches!(validate(&f, 1, 1..=8), Err(Error::Capability { .. })));
    }
}
