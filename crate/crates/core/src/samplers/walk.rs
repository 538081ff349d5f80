use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Chain, Sampler};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Generator behind every walk. Each seed yields an independent stream.
pub type WalkRng = ChaCha8Rng;

pub fn walk_rng(seed: u64) -> WalkRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartPolicy {
    #[default]
    Uniform,
    Fixed(usize),
    DegreeProportional,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkConfig {
    pub sampler: Sampler,
    pub budget: usize,
    pub seed: u64,
    pub start: StartPolicy,
    /// Steps taken and discarded before the first recorded node.
    pub burn_in: usize,
}

impl WalkConfig {
    pub fn new(sampler: Sampler, budget: usize, seed: u64) -> Self {
        Self { sampler, budget, seed, start: StartPolicy::Uniform, burn_in: 0 }
    }

    pub fn with_start(mut self, start: StartPolicy) -> Self {
        self.start = start;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }
}

/// The nodes visited by one launch, repeats included.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub nodes: Vec<usize>,
    pub config: WalkConfig,
    pub start: usize,
}

impl Trace {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn draw_start<R: Rng>(graph: &Graph, policy: StartPolicy, rng: &mut R) -> Result<usize> {
    let n = graph.node_count();
    match policy {
        StartPolicy::Uniform => Ok(rng.random_range(0..n)),
        StartPolicy::Fixed(v) if v < n => Ok(v),
        StartPolicy::Fixed(v) => Err(Error::NodeOutOfRange { node: v, n }),
        StartPolicy::DegreeProportional => {
            if graph.edge_count() == 0 {
                return Ok(rng.random_range(0..n));
            }
            let mut arc = rng.random_range(0..2 * graph.edge_count());
            for (v, d) in graph.degrees().enumerate() {
                if arc < d {
                    return Ok(v);
                }
                arc -= d;
            }
            unreachable!("arc index below 2m")
        }
    }
}

/// Runs one launch of `config.budget` recorded steps. The result depends only
/// on the graph and the config (seed included).
pub fn run_walk(graph: &Graph, config: &WalkConfig) -> Result<Trace> {
    if config.budget == 0 {
        return Err(Error::InvalidParameter("budget must be at least 1".into()));
    }
    let chain = Chain::new(graph, config.sampler)?;
    let mut rng = walk_rng(config.seed);
    let start = draw_start(graph, config.start, &mut rng)?;
    let mut current = start;
    for _ in 0..config.burn_in {
        current = chain.step(current, &mut rng)?;
    }
    let mut nodes = Vec::with_capacity(config.budget);
    nodes.push(current);
    for _ in 1..config.budget {
        current = chain.step(current, &mut rng)?;
        nodes.push(current);
    }
    Ok(Trace { nodes, config: *config, start })
}
