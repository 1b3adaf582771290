//! Exact integer and rational arithmetic.
//!
//! Integers and rationals are backed by `num-bigint`/`num-rational`; this
//! module adds the pieces the operators need on top: binomial rows, the two
//! integer roundings with an explicit tie policy, and a rounding guard for
//! values that are only known to within a certified error bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unbounded signed integer.
pub type ArbitraryInteger = BigInt;

/// Rational in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// How an exact tie `m + 1/2` is resolved by [`nearest_int`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum TiePolicy {
    /// `m + 1/2 -> m + 1`
    #[serde(rename = "half_up")]
    HalfUp,
    /// `m + 1/2 -> m`
    #[serde(rename = "half_down")]
    HalfDown,
    #[default]
    #[serde(rename = "half_away")]
    HalfAwayFromZero,
    #[serde(rename = "half_even")]
    HalfToEven,
}

impl TiePolicy {
    pub const ALL: [TiePolicy; 4] = [
        TiePolicy::HalfUp,
        TiePolicy::HalfDown,
        TiePolicy::HalfAwayFromZero,
        TiePolicy::HalfToEven,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TiePolicy::HalfUp => "half_up",
            TiePolicy::HalfDown => "half_down",
            TiePolicy::HalfAwayFromZero => "half_away",
            TiePolicy::HalfToEven => "half_even",
        }
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TiePolicy::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown tie policy `{s}`")))
    }
}

/// The rounding applied to `f(k/n) * C(n, k)` by the integer operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingMode {
    Floor,
    Nearest(TiePolicy),
}

pub fn binomial(n: u64, k: u64) -> Result<ArbitraryInteger> {
    if k > n {
        return Err(Error::invalid(format!("binomial: k = {k} exceeds n = {n}")));
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for j in 0..k {
        // C(n, j+1) = C(n, j) * (n - j) / (j + 1), the division is exact.
        c *= n - j;
        c /= j + 1;
    }
    Ok(c)
}

/// Row `C(n, 0), ..., C(n, n)` of Pascal's triangle, built once per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialRow {
    n: usize,
    row: Vec<ArbitraryInteger>,
}

impl BinomialRow {
    pub fn new(n: usize) -> Self {
        let mut row = Vec::with_capacity(n + 1);
        let mut c = BigInt::one();
        row.push(c.clone());
        for k in 0..n {
            c *= n - k;
            c /= k + 1;
            row.push(c.clone());
        }
        BinomialRow { n, row }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize) -> &ArbitraryInteger {
        &self.row[k]
    }

    pub fn as_slice(&self) -> &[ArbitraryInteger] {
        &self.row
    }
}

/// `n! / (n - s)!`, zero when `s > n`.
pub fn falling_factorial(n: usize, s: usize) -> ArbitraryInteger {
    if s > n {
        return BigInt::zero();
    }
    ((n - s + 1)..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Largest integer `r` with `r <= q`.
pub fn floor_int(q: &ExactRational) -> ArbitraryInteger {
    q.numer().div_floor(q.denom())
}

/// Integer nearest to `q`; exact ties `m + 1/2` are resolved by `policy`.
pub fn nearest_int(q: &ExactRational, policy: TiePolicy) -> ArbitraryInteger {
    let lower = floor_int(q);
    let frac = q - BigRational::from_integer(lower.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => lower,
        std::cmp::Ordering::Greater => lower + 1,
        std::cmp::Ordering::Equal => match policy {
            TiePolicy::HalfUp => lower + 1,
            TiePolicy::HalfDown => lower,
            TiePolicy::HalfAwayFromZero => {
                if q.is_positive() {
                    lower + 1
                } else {
                    lower
                }
            }
            TiePolicy::HalfToEven => {
                if lower.is_even() {
                    lower
                } else {
                    lower + 1
                }
            }
        },
    }
}

pub fn round_exact(q: &ExactRational, mode: RoundingMode) -> ArbitraryInteger {
    match mode {
        RoundingMode::Floor => floor_int(q),
        RoundingMode::Nearest(policy) => nearest_int(q, policy),
    }
}

/// Rounds the unknown value `y` with `|y - approx| <= err`.
///
/// Returns [`Error::PrecisionInsufficient`] when `[approx - err, approx + err]`
/// touches a rounding boundary (an integer for floor, a half-integer for
/// nearest), since the rounding of `y` is then undetermined. A zero `err`
/// means `approx` is exact and the tie policy applies.
pub fn guarded_round(
    approx: &ExactRational,
    err: &ExactRational,
    mode: RoundingMode,
) -> Result<ArbitraryInteger> {
    if err.is_negative() {
        return Err(Error::invalid("guarded_round: negative error bound"));
    }
    if err.is_zero() {
        return Ok(round_exact(approx, mode));
    }
    let shift = match mode {
        RoundingMode::Floor => BigRational::zero(),
        RoundingMode::Nearest(_) => BigRational::new(BigInt::one(), BigInt::from(2)),
    };
    let lo = approx - err + &shift;
    let hi = approx + err + &shift;
    let r = floor_int(&lo);
    // For nearest rounding a lower endpoint sitting exactly on m + 1/2 could
    // be a tie, so it counts as touching the boundary.
    let lo_on_boundary = matches!(mode, RoundingMode::Nearest(_)) && lo.is_integer();
    if r == floor_int(&hi) && !lo_on_boundary {
        Ok(r)
    } else {
        Err(Error::PrecisionInsufficient)
    }
}

/// Working-precision ladder for certified evaluation: 128, 256, ... bits up
/// to the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionSchedule {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionSchedule {
    fn default() -> Self {
        PrecisionSchedule {
            start_bits: 128,
            cap_bits: 4096,
        }
    }
}

impl PrecisionSchedule {
    pub fn steps(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::successors(Some(self.start_bits), |b| b.checked_mul(2))
            .take_while(move |b| *b <= self.cap_bits)
    }
}

/// `floor(radicand^(1/b))` together with an exactness flag.
pub(crate) fn integer_root(radicand: &BigUint, b: u32) -> (BigUint, bool) {
    let r = radicand.nth_root(b);
    let exact = r.pow(b) == *radicand;
    (r, exact)
}

pub fn rational_to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Renders `q` as `"num/den"`, always with an explicit denominator.
pub fn rational_string(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"`, an integer, or a decimal such as `-1.25` or `2.5e-3`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse `{s}` as a rational"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(all);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -q } else { q })
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_small_cases() {
        assert_eq!(binomial(4, 2).unwrap(), int(6));
        for n in 0..20 {
            assert_eq!(binomial(n, 0).unwrap(), int(1));
        }
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn binomial_30_15_matches_pascal_recurrence() {
        // Oracle: Pascal's triangle by repeated addition.
        let mut row = vec![BigInt::one()];
        for _ in 0..30 {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        assert_eq!(row[15], int(155_117_520));
        assert_eq!(binomial(30, 15).unwrap(), row[15]);
        assert_eq!(BinomialRow::new(30).as_slice(), &row[..]);
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_int(&ratio(1, 2)), int(0));
        assert_eq!(floor_int(&ratio(-1, 2)), int(-1));
        assert_eq!(floor_int(&ratio(7, 1)), int(7));
    }

    #[test]
    fn nearest_examples() {
        assert_eq!(nearest_int(&ratio(3, 4), TiePolicy::default()), int(1));
        assert_eq!(nearest_int(&ratio(1, 2), TiePolicy::HalfUp), int(1));
        assert_eq!(nearest_int(&ratio(1, 2), TiePolicy::HalfDown), int(0));
        assert_eq!(nearest_int(&ratio(-5, 2), TiePolicy::HalfToEven), int(-2));
        assert_eq!(nearest_int(&ratio(-5, 2), TiePolicy::HalfAwayFromZero), int(-3));
        assert_eq!(nearest_int(&ratio(5, 2), TiePolicy::HalfAwayFromZero), int(3));
        assert_eq!(nearest_int(&ratio(-1, 2), TiePolicy::HalfUp), int(0));
    }

    #[test]
    fn guarded_round_examples() {
        let v = BigRational::from_float(2.4999).unwrap();
        let e = BigRational::from_float(1e-8).unwrap();
        let nearest = RoundingMode::Nearest(TiePolicy::default());
        assert_eq!(guarded_round(&v, &e, nearest).unwrap(), int(2));

        let v = BigRational::from_float(2.5000000001).unwrap();
        let e = BigRational::from_float(1e-3).unwrap();
        assert!(matches!(
            guarded_round(&v, &e, nearest),
            Err(Error::PrecisionInsufficient)
        ));

        let v = BigRational::from_float(0.9999999).unwrap();
        let e = BigRational::from_float(1e-10).unwrap();
        assert_eq!(guarded_round(&v, &e, RoundingMode::Floor).unwrap(), int(0));
    }

    #[test]
    fn guarded_round_boundary_endpoints() {
        // [1/2 - 1/4, 1/2 + 1/4] for floor: inside [0, 1) only if the upper end
        // stays below 1.
        let nearest = RoundingMode::Nearest(TiePolicy::HalfDown);
        assert_eq!(
            guarded_round(&ratio(1, 2), &ratio(1, 4), RoundingMode::Floor).unwrap(),
            int(0)
        );
        assert!(guarded_round(&ratio(3, 4), &ratio(1, 4), RoundingMode::Floor).is_err());
        // Lower end exactly on a tie.
        assert!(guarded_round(&ratio(3, 4), &ratio(1, 4), nearest).is_err());
        assert_eq!(guarded_round(&ratio(1, 2), &ratio(0, 1), nearest).unwrap(), int(0));
    }

    #[test]
    fn precision_schedule_doubles_to_cap() {
        let steps: Vec<u32> = PrecisionSchedule::default().steps().collect();
        assert_eq!(steps, vec![128, 256, 512, 1024, 2048, 4096]);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("2").unwrap(), ratio(2, 1));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("2.5e-3").unwrap(), ratio(1, 400));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn tie_policy_names_round_trip() {
        for p in TiePolicy::ALL {
            assert_eq!(p.as_str().parse::<TiePolicy>().unwrap(), p);
        }
        assert_eq!(TiePolicy::default(), TiePolicy::HalfAwayFromZero);
    }

    #[test]
    fn integer_root_detects_exact_powers() {
        let (r, exact) = integer_root(&BigUint::from(81u32), 2);
        assert_eq!((r, exact), (BigUint::from(9u32), true));
        let (r, exact) = integer_root(&BigUint::from(82u32), 2);
        assert_eq!((r, exact), (BigUint::from(9u32), false));
    }
}
