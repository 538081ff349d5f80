//! Random-walk node sampling on undirected graphs.
//!
//! Five samplers are provided: simple random walk (SRW), random walk with
//! escaping (RWE), maximum degree (MD), generalized maximum degree (GMD) and
//! weighted jump random walk (WJRW). Each can be run as a seeded stochastic
//! walk, inspected as an exact Markov chain (rows, stationary law, spectrum)
//! and combined with the ratio estimator to recover node-level statistics such
//! as the degree distribution.

pub mod error;
pub mod estimation;
pub mod generators;
pub mod graph;
#[cfg(any(test, feature = "test-oracles"))]
pub mod oracle;
pub mod samplers;
pub mod seeds;
pub mod spectral;

pub use error::{Error, Result};
pub use estimation::{
    degree_distribution_estimate, ht_ratio_estimate, kl_divergence, tvd, unique_count, Distribution, EstimateResult,
};
pub use graph::{graph_stats, parse_edge_list, Graph, GraphStats, IngestReport};
pub use samplers::{jump_set, run_walk, Chain, JumpSet, NumericOptions, Sampler, StartPolicy, Trace, WalkConfig};
pub use spectral::{
    dense_transition_matrix, expected_repeat_probability, reversibility_residual, spectrum, SpectrumReport, WalkMatrix,
};
