//! Error curves and fitted rates `error ~ C n^(-alpha)` for a few functions
//! and derivative orders.

use bernint::analysis::{error_curve, fit_rate, GridConfig};
use bernint::corpus::builtin;
use bernint::exact::TiePolicy;
use bernint::operators::OperatorKind;

fn main() -> bernint::Result<()> {
    let grid = GridConfig::default();
    let ns: Vec<usize> = (4..=9).map(|j| 1 << j).collect();
    let cases = [
        ("monomial(2)", 0),
        ("monomial(3)", 1),
        ("poly_boundary_flat(2)", 2),
        ("holder_interior(1/2)", 0),
        ("abs_shift", 0),
        ("holder_interior(3/2)", 1),
    ];
    for (name, s) in cases {
        let f = builtin(name)?;
        for kind in [OperatorKind::Classic, OperatorKind::NearestInt(TiePolicy::default())] {
            let curve = error_curve(&f, kind, s, &ns, &grid)?;
            match fit_rate(&curve.pairs()) {
                Ok(fit) => println!(
                    "{name:<24} s = {s} {kind:<18} alpha = {:.4}  C = {:.4}  residual = {:.1e}",
                    fit.exponent, fit.constant, fit.residual
                ),
                Err(e) => println!("{name:<24} s = {s} {kind:<18} {e}"),
            }
        }
    }
    Ok(())
}
