//! The random-graph model: weights, kernels, and graph sampling.

mod graph;
mod kernel;
mod params;
mod prob;
pub mod rng;
mod svf;
mod tau;
mod weights;

pub use graph::{edge_probability, sample_graph, Graph, GraphSample};
pub use kernel::Kernel;
pub use params::{EdgeSampler, ModelParams};
pub use prob::{
    connection_probability, probability_matrix, probability_matrix_with_limit, ProbabilityMatrix,
    DEFAULT_ORACLE_LIMIT,
};
pub use rng::SeedLineage;
pub use svf::SlowlyVarying;
pub use tau::{mean_weight, structural_scale, Tau};
pub use weights::{pure_power_law_weight, sample_weights, WeightVector};
