//! Endpoint and inequality hypotheses for derivative order s.

use bernint::analysis::hypothesis_check;
use bernint::corpus::{builtin, catalog};

fn main() -> bernint::Result<()> {
    for entry in catalog() {
        let r = hypothesis_check(&entry.spec, entry.declared_s, 1..=64)?;
        println!("{:<24} s = {} passed = {} n0 = {:?}", r.function, r.s, r.passed, r.n0);
    }
    let cube = builtin("monomial(3)")?;
    let r = hypothesis_check(&cube, 2, 2..=32)?;
    for c in &r.checks {
        println!("  {:<28} {:<5} {}", c.name, c.passed, c.detail);
    }
    Ok(())
}
