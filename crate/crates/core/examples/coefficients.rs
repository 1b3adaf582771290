//! Coefficient construction for the three operators.
//!
//!     cargo run --example coefficients -- 'holder_interior(1/2)' 6

use bernint::corpus::builtin;
use bernint::exact::{rational_string, TiePolicy};
use bernint::operators::{build_model, OperatorKind, ScaledSample};

fn main() -> bernint::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "monomial(2)".to_string());
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let f = builtin(&name)?;

    for kind in [
        OperatorKind::Classic,
        OperatorKind::FloorInt,
        OperatorKind::NearestInt(TiePolicy::HalfAwayFromZero),
    ] {
        let model = build_model(&f, n, kind)?;
        println!("{f}, n = {n}, {kind}");
        println!("{:>3} {:>6} {:>8} {:>24} {:>8} {:>20}", "k", "k/n", "C(n,k)", "f(k/n) C(n,k)", "rounded", "coefficient");
        for row in model.rows() {
            let scaled = match &row.scaled {
                ScaledSample::Exact(v) => rational_string(v),
                ScaledSample::Approx { value, .. } => format!("~{:.12}", bernint::exact::rational_to_f64(value)),
            };
            let rounded = row.rounded.as_ref().map(|r| r.to_string()).unwrap_or_default();
            println!(
                "{:>3} {:>6} {:>8} {:>24} {:>8} {:>20}",
                row.k,
                rational_string(&row.node),
                row.binomial,
                scaled,
                rounded,
                rational_string(&row.coeff)
            );
        }
        println!();
    }
    Ok(())
}
