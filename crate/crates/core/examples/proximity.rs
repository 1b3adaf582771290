//! Distance between the integer-coefficient operators and the classical one,
//! against the bounds 1/n (floor) and 1/(2n) (nearest).

use bernint::analysis::GridConfig;
use bernint::corpus::catalog;
use bernint::exact::TiePolicy;
use bernint::operators::{proximity_gap, OperatorKind};

fn main() -> bernint::Result<()> {
    let grid = GridConfig::default();
    println!("{:<24} {:>5} {:>14} {:>14}", "function", "n", "n*floor gap", "2n*nearest gap");
    for entry in catalog() {
        let f = &entry.spec;
        for n in [4, 16, 64, 256] {
            let floor = proximity_gap(f, n, OperatorKind::FloorInt, &grid)?.value;
            let nearest = proximity_gap(f, n, OperatorKind::NearestInt(TiePolicy::default()), &grid)?.value;
            println!("{:<24} {:>5} {:>14.6} {:>14.6}", f.name(), n, n as f64 * floor, 2.0 * n as f64 * nearest);
        }
    }
    Ok(())
}
