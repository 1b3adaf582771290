//! Exact endpoint derivatives of integer-coefficient models: from some n on
//! they match those of f.

use bernint::analysis::boundary_interpolation_check;
use bernint::corpus::builtin;
use bernint::exact::{rational_string, TiePolicy};
use bernint::operators::OperatorKind;

fn main() -> bernint::Result<()> {
    let f = builtin("monomial(2)")?;
    let ns: Vec<usize> = (1..=12).collect();
    for tie in TiePolicy::ALL {
        let r = boundary_interpolation_check(&f, OperatorKind::NearestInt(tie), 2, &ns)?;
        println!("nearest[{tie}]: threshold {:?}", r.threshold);
        for row in r.rows.iter().take(4) {
            let left: Vec<String> = row.left_values.iter().map(rational_string).collect();
            let right: Vec<String> = row.right_values.iter().map(rational_string).collect();
            println!("  n = {}: at 0 {:?}, at 1 {:?}", row.n, left, right);
        }
    }
    Ok(())
}
