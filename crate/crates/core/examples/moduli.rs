//! The modulus of continuity and the weighted second-order modulus of a few
//! functions, with their log-log slopes in t.

use bernint::analysis::{fit_loglog, omega1_sweep, omega_phi2_sweep, GridConfig, GridDistribution, Interval};
use bernint::corpus::builtin;

fn main() -> bernint::Result<()> {
    let ts = [0.4, 0.2, 0.1, 0.05, 0.025, 0.0125];
    let grid = GridConfig::default();
    let uniform = GridConfig::new(4097, GridDistribution::Uniform, 0)?;
    for name in ["monomial(2)", "holder_interior(1/2)", "abs_shift", "holder_interior(3/2)"] {
        let f = builtin(name)?;
        let w1 = omega1_sweep(&f, &ts, Interval::unit(), &uniform)?;
        let w2 = omega_phi2_sweep(&f, &ts, &grid)?;
        println!("{name}");
        for (a, b) in w1.iter().zip(&w2) {
            println!("  t = {:<7} omega_1 = {:.6e}  omega_phi^2 = {:.6e}", a.t, a.value, b.value);
        }
        let slope = |v: &[bernint::analysis::ModulusEstimate]| {
            let (t, y): (Vec<f64>, Vec<f64>) = v.iter().map(|e| (e.t, e.value)).unzip();
            fit_loglog(&t, &y).map(|p| p.slope)
        };
        println!("  slopes: omega_1 {:.3}, omega_phi^2 {:.3}", slope(&w1)?, slope(&w2)?);
    }
    Ok(())
}
