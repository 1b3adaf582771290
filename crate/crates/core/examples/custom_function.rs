//! A user-defined polynomial goes through the same pipeline as the built-in
//! functions.

use bernint::analysis::{error_curve, fit_rate, hypothesis_check, GridConfig};
use bernint::corpus::{FunctionSpec, Polynomial};
use bernint::exact::{ratio, rational_string, TiePolicy};
use bernint::operators::OperatorKind;

fn main() -> bernint::Result<()> {
    // 2x^3 - 3x^2/2 + x/2 + 1
    let poly = Polynomial::new(vec![ratio(1, 1), ratio(1, 2), ratio(-3, 2), ratio(2, 1)]);
    let f = FunctionSpec::polynomial("my_cubic", poly);
    for x in [ratio(0, 1), ratio(1, 1)] {
        println!("f({}) = {}", rational_string(&x), f.eval_exact(&x).map(|v| rational_string(&v)).unwrap_or_default());
    }

    let report = hypothesis_check(&f, 1, 1..=32)?;
    for c in report.failures() {
        println!("fails: {}", c.detail);
    }
    let ns: Vec<usize> = (4..=9).map(|j| 1 << j).collect();
    let curve = error_curve(&f, OperatorKind::NearestInt(TiePolicy::HalfToEven), 0, &ns, &GridConfig::default())?;
    let fit = fit_rate(&curve.pairs())?;
    println!("nearest, s = 0: alpha = {:.4}, C = {:.4}", fit.exponent, fit.constant);
    Ok(())
}
