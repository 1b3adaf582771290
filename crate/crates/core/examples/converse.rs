//! Measured rate of the s-th derivative error against the slopes of the
//! moduli of f^(s).

use bernint::analysis::{converse_experiment, GridConfig};
use bernint::corpus::builtin;
use bernint::exact::TiePolicy;
use bernint::operators::OperatorKind;

fn main() -> bernint::Result<()> {
    let grid = GridConfig::default();
    let ns: Vec<usize> = (4..=10).map(|j| 1 << j).collect();
    let ts = [0.2, 0.1, 0.05, 0.025, 0.0125];
    let kind = OperatorKind::NearestInt(TiePolicy::default());
    for (name, s) in [("holder_interior(3/2)", 1), ("poly_boundary_flat(1)", 1), ("monomial(2)", 1)] {
        let f = builtin(name)?;
        let r = converse_experiment(&f, kind, s, &ns, &ts, &grid)?;
        let alpha = r.rate.as_ref().map(|fit| fit.exponent);
        println!(
            "{name} s = {s}: alpha = {:?}, omega_phi^2 slope = {:?} (vanishes: {}), omega_1 slope = {:?}, in range: {}",
            alpha,
            r.slope_phi2.map(|p| p.slope),
            r.phi2_vanishes,
            r.slope_omega1.map(|p| p.slope),
            r.in_theorem_range
        );
    }
    Ok(())
}
