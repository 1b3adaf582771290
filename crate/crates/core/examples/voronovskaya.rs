//! `n (B_n f(x) - f(x))` approaching `x(1-x) f''(x)/2`, exactly for
//! polynomials.

use bernint::analysis::voronovskaya_check;
use bernint::corpus::builtin;
use bernint::exact::{rational_string, ratio};

fn main() -> bernint::Result<()> {
    let ns = [8, 16, 32, 64, 128, 256];
    for (name, x) in [("monomial(3)", ratio(1, 2)), ("monomial(3)", ratio(1, 3)), ("monomial(4)", ratio(1, 5))] {
        let f = builtin(name)?;
        let r = voronovskaya_check(&f, &x, &ns)?;
        println!("{name} at x = {}: limit {}", rational_string(&x), r.limit_exact.as_ref().map(rational_string).unwrap_or_default());
        for row in &r.rows {
            let exact = row.residual_exact.as_ref().map(rational_string).unwrap_or_default();
            println!("  n = {:>3}  n*gap = {:.10}  residual = {exact}", row.n, row.scaled_gap);
        }
        if let Some(rate) = &r.rate {
            println!("  residual decays like n^-{:.3}", rate.exponent);
        }
    }
    Ok(())
}
