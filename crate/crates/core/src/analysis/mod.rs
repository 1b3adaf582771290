//! Numerical analysis on `[0, 1]`: sup-norms, moduli of smoothness, rate
//! fits and the experiment procedures built from them.

mod experiments;
mod grid;
mod modulus;
mod rate;

pub use experiments::{
    boundary_interpolation_check, converse_experiment, error_curve, hypothesis_check,
    saturation_probe, voronovskaya_check, BoundaryReport, BoundaryRow, ConverseReport,
    ErrorCurve, ErrorPoint, HypothesisCheck, HypothesisReport, InequalityViolation,
    SaturationReport, SaturationVerdict, VoronovskayaReport, VoronovskayaRow, SATURATION_BAND,
    VANISHING_FACTOR,
};
pub use grid::{sup_norm, GridConfig, GridDistribution, Interval, SupEstimate, MIN_GRID_POINTS};
pub use modulus::{
    omega1, omega1_sweep, omega_phi2, omega_phi2_sweep, phi_steps, ModulusEstimate, ModulusKind,
    PHI_STEPS,
};
pub use rate::{
    fit_loglog, fit_rate, PowerFit, RateFit, DISCARD_COUNT, DISCARD_THRESHOLD, MIN_RATE_PAIRS,
};

pub(crate) use grid::uniform_nodes;

/// A real function on `[0, 1]` evaluated in floating point.
pub trait RealFunction {
    fn value(&self, x: f64) -> f64;

    /// `F(x + d) - 2 F(x) + F(x - d)`.
    fn second_difference(&self, x: f64, d: f64) -> f64 {
        self.value(x + d) - 2.0 * self.value(x) + self.value(x - d)
    }
}

impl<F: Fn(f64) -> f64> RealFunction for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}
