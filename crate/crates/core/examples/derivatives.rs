//! Derivatives of a model as scaled coefficient differences, checked
//! against the expanded difference formula and a central difference.

use bernint::corpus::builtin;
use bernint::exact::{falling_factorial, TiePolicy};
use bernint::operators::{build_model, derivative_model, finite_difference, OperatorKind};
use bernint::RealFunction;
use num_rational::BigRational;

fn main() -> bernint::Result<()> {
    let f = builtin("poly_boundary_flat(2)")?;
    let n = 24;
    let model = build_model(&f, n, OperatorKind::NearestInt(TiePolicy::default()))?;
    for s in 1..=3 {
        let d = derivative_model(&model, s)?;
        let factor = BigRational::from_integer(falling_factorial(n, s));
        let expanded = finite_difference(model.coeffs(), s)?;
        let same = d
            .coeffs()
            .iter()
            .zip(&expanded.values)
            .all(|(a, b)| *a == b * &factor);
        let lower = derivative_model(&model, s - 1)?;
        let (x, h) = (0.3, 1e-4);
        let cd = (lower.value(x + h) - lower.value(x - h)) / (2.0 * h);
        println!(
            "s = {s}: degree {}, expanded form agrees: {same}, at x = {x}: {:.10} vs central difference {:.10}, f^({s}) = {:.10}",
            d.degree(),
            d.value(x),
            cd,
            f.deriv(s, x)?
        );
    }
    Ok(())
}
