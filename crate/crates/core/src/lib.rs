//! Bernstein polynomials with integer coefficients.
//!
//! Three operators of degree `n` act on a function `f` on `[0, 1]`: the
//! classical one with coefficients `f(k/n)`, and two integer variants whose
//! scaled coefficients `f(k/n) C(n,k)` are rounded down or to the nearest
//! integer. Everything is built exactly in rationals; floating point is used
//! only for sup-norms, moduli and rate fits.
//!
//! ```
//! use bernint::corpus::builtin;
//! use bernint::operators::{build_model, OperatorKind};
//!
//! let f = builtin("monomial(2)").unwrap();
//! let model = build_model(&f, 4, OperatorKind::FloorInt).unwrap();
//! assert_eq!(model.evaluate(1.0).unwrap(), 1.0);
//! ```

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod operators;
pub mod serde_exact;

pub use analysis::RealFunction;
pub use corpus::{builtin, FunctionSpec, Polynomial};
pub use error::{Error, Result};
pub use exact::{ArbitraryInteger, ExactRational, TiePolicy};
pub use operators::{build_model, BernsteinModel, BernsteinPoly, OperatorKind};
