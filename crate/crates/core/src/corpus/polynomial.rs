use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::analysis::RealFunction;
use crate::error::{Error, Result};
use crate::exact::{binomial, rational_to_f64, ExactRational};

/// Polynomial with exact rational coefficients in the monomial basis,
/// lowest degree first. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
    float: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let float = coeffs.iter().map(rational_to_f64).collect();
        Polynomial { coeffs, float }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); m + 1];
        coeffs[m] = BigRational::one();
        Polynomial::new(coeffs)
    }

    pub fn zero() -> Self {
        Polynomial::new(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> ExactRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval_exact(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.float.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Running-error bound for [`Polynomial::eval`].
    pub fn eval_bound(&self, x: f64) -> f64 {
        let magnitude = self
            .float
            .iter()
            .rev()
            .fold(0.0, |acc: f64, c| acc * x.abs() + c.abs());
        (2 * self.coeffs.len() + 1) as f64 * f64::EPSILON * magnitude + f64::MIN_POSITIVE
    }

    pub fn derivative(&self, order: usize) -> Polynomial {
        if order > self.degree() || self.is_zero() {
            return Polynomial::zero();
        }
        let coeffs = (order..self.coeffs.len())
            .map(|j| {
                let factor: BigInt = ((j - order + 1)..=j).fold(BigInt::one(), |a, i| a * i);
                &self.coeffs[j] * BigRational::from_integer(factor)
            })
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        (0..e).fold(Polynomial::from_integers(&[1]), |acc, _| acc.mul(self))
    }

    /// Coefficients of this polynomial in the degree-`m` Bernstein basis,
    /// using `x^j = sum_{k>=j} C(k,j)/C(m,j) p_{m,k}(x)`.
    pub fn to_bernstein(&self, m: usize) -> Result<Vec<ExactRational>> {
        if !self.is_zero() && self.degree() > m {
            return Err(Error::invalid(format!(
                "degree {} polynomial has no degree-{m} Bernstein form",
                self.degree()
            )));
        }
        let m64 = m as u64;
        let denominators: Vec<BigInt> = (0..self.coeffs.len())
            .map(|j| binomial(m64, j as u64))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut c = BigRational::zero();
            let mut ckj = BigInt::one(); // C(k, j)
            for (j, a) in self.coeffs.iter().enumerate().take(k + 1) {
                if j > 0 {
                    ckj = ckj * (k + 1 - j) / j;
                }
                if !a.is_zero() {
                    c += a * BigRational::new(ckj.clone(), denominators[j].clone());
                }
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Taylor coefficients `P^(j)(x) / j!` at `x`, by repeated synthetic division.
    pub fn taylor_at(&self, x: f64) -> Vec<f64> {
        let mut work = self.float.clone();
        let len = work.len();
        for start in 0..len {
            for j in (start..len - 1).rev() {
                let carry = work[j + 1] * x;
                work[j] += carry;
            }
        }
        work
    }

    pub fn is_integer_linear(&self) -> bool {
        self.coeffs.len() <= 2 && self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl RealFunction for Polynomial {
    fn value(&self, x: f64) -> f64 {
        self.eval(x)
    }

    /// `P(x+d) - 2P(x) + P(x-d) = 2 * sum_{j even, j >= 2} P^(j)(x)/j! * d^j`,
    /// which vanishes identically for linear `P`.
    fn second_difference(&self, x: f64, d: f64) -> f64 {
        let taylor = self.taylor_at(x);
        let d2 = d * d;
        let mut power = d2;
        let mut sum = 0.0;
        for c in taylor.iter().skip(2).step_by(2) {
            sum += c * power;
            power *= d2;
        }
        2.0 * sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn horner_and_derivative() {
        let p = Polynomial::from_integers(&[2, 3]);
        assert_eq!(p.eval_exact(&ratio(1, 4)), ratio(11, 4));
        let cube = Polynomial::monomial(3);
        assert_eq!(cube.derivative(2), Polynomial::from_integers(&[0, 6]));
        assert!(cube.derivative(4).is_zero());
    }

    #[test]
    fn bernstein_form_of_square() {
        // x^2 in degree 2: coefficients (k/2)^2 ... only for k in {0, 2};
        // the middle one is 0.
        let b = Polynomial::monomial(2).to_bernstein(2).unwrap();
        assert_eq!(b, vec![ratio(0, 1), ratio(0, 1), ratio(1, 1)]);
        // Linear functions have coefficients f(k/m) in every degree.
        let lin = Polynomial::from_integers(&[2, 3]);
        let b = lin.to_bernstein(4).unwrap();
        for (k, c) in b.iter().enumerate() {
            assert_eq!(c, &lin.eval_exact(&ratio(k as i64, 4)));
        }
        assert!(Polynomial::monomial(3).to_bernstein(2).is_err());
    }

    #[test]
    fn taylor_coefficients_match_derivatives() {
        let p = Polynomial::from_integers(&[1, -2, 0, 5]);
        let x = 0.3;
        let t = p.taylor_at(x);
        let fact = [1.0, 1.0, 2.0, 6.0];
        for (j, c) in t.iter().enumerate() {
            let expected = p.derivative(j).eval(x) / fact[j];
            assert!((c - expected).abs() < 1e-14, "j = {j}");
        }
    }

    #[test]
    fn second_difference_of_linear_is_exactly_zero() {
        let p = Polynomial::from_integers(&[0, 2]);
        assert_eq!(p.second_difference(0.37, 0.11), 0.0);
        let sq = Polynomial::monomial(2);
        assert!((sq.second_difference(0.5, 0.1) - 0.02).abs() < 1e-17);
    }
}
