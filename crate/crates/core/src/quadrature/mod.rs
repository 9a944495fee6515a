//! Numeric integration: adaptive Gauss-Kronrod in one dimension, randomized
//! Sobol points in up to eight, and real-line integrals with analytic tails.

mod cube;
mod gk;
mod real_line;
pub mod sobol;

pub use cube::{
    integrate_box, integrate_box_with, integrate_unit_cube, integrate_unit_cube_with,
    IntegrandSpec, QmcOptions, DEFAULT_QMC_SEED, MIN_REPLICATIONS,
};
pub use gk::{integrate_1d, integrate_1d_complex, integrate_1d_with, Options};
pub use real_line::{
    integrate_real_line_power, integrate_real_line_power_with, truncation_for, PowerEnvelope,
    RealLineOptions,
};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult<T = f64> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
    /// False when the tolerance was not reached within the budget.
    pub converged: bool,
}
