//! Saturation probe: `n * error` for the trivial class, a smooth function
//! and a Hölder kink.

use bernint::analysis::{saturation_probe, GridConfig};
use bernint::corpus::builtin;
use bernint::exact::TiePolicy;
use bernint::operators::OperatorKind;

fn main() -> bernint::Result<()> {
    let grid = GridConfig::default();
    let ns: Vec<usize> = (0..=10).map(|j| 1 << j).collect();
    for name in ["integer_linear(2,1)", "monomial(2)", "poly_boundary_flat(1)", "holder_interior(1/2)"] {
        let f = builtin(name)?;
        for kind in [OperatorKind::Classic, OperatorKind::FloorInt, OperatorKind::NearestInt(TiePolicy::default())] {
            let r = saturation_probe(&f, kind, 0, &ns, &grid)?;
            let scaled: Vec<String> = r.scaled_errors.iter().map(|(_, v)| format!("{v:.4}")).collect();
            println!("{name:<24} {kind:<18} {:?}  n*error: {}", r.verdict, scaled.join(" "));
        }
    }
    Ok(())
}
