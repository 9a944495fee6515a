//! Rank-1 inhomogeneous random graphs with power-law weights: sampling, exact
//! clique and cycle counts, and the asymptotic formulas for their expectations.

pub mod asymptotics;
pub mod error;
pub mod harness;
pub mod model;
pub mod motif;
pub mod quadrature;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Tau = model::Tau<f64>;
pub type QuadratureResult = quadrature::QuadratureResult<f64>;
pub type PhiInput = special::PhiInput<f64>;
