//! Small deterministic and seeded random graphs for tests and experiments.

use rand::Rng;

use crate::graph::{parse_edge_list_str, Graph};

/// The 5-node graph with edges 1–2, 1–3, 1–4, 1–5, 2–4, 3–4, 3–5 (degrees
/// 4, 2, 3, 3, 2), as an edge-list file.
pub const WORKED_EXAMPLE_EDGE_LIST: &str = "# 5 nodes, 7 edges\n1 2\n1 3\n1 4\n1 5\n2 4\n3 4\n3 5\n";

/// [`WORKED_EXAMPLE_EDGE_LIST`] parsed; internal ids 0..5 carry labels 1..=5.
pub fn worked_example() -> Graph {
    parse_edge_list_str(WORKED_EXAMPLE_EDGE_LIST).expect("valid literal").0
}

/// Path `0 – 1 – … – (n−1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges)
}

/// Connected graph on `n` nodes: a random recursive tree plus every other
/// pair independently with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Heavy-tailed expected-degree weights `w_i ∝ (i + 1)^(−1/(γ−1))`, scaled so
/// the largest is `max_weight` and floored at `min_weight`.
pub fn power_law_weights(n: usize, gamma: f64, min_weight: f64, max_weight: f64) -> Vec<f64> {
    let exponent = -1.0 / (gamma - 1.0);
    (0..n).map(|i| (max_weight * ((i + 1) as f64).powf(exponent)).max(min_weight)).collect()
}

/// Chung–Lu style graph: `edges` endpoint pairs drawn independently with
/// probability proportional to `weights`. Repeats and self-loops are dropped,
/// so the result may have fewer edges and need not be connected.
pub fn chung_lu<R: Rng + ?Sized>(weights: &[f64], edges: usize, rng: &mut R) -> Graph {
    let all = WeightedPool::new((0..weights.len()).collect(), weights);
    let pairs: Vec<_> = (0..edges).map(|_| (all.draw(rng), all.draw(rng))).collect();
    Graph::from_edges(weights.len(), &pairs)
}

/// Chung–Lu graph with planted communities. Node `i` belongs to community
/// `i % communities`; each edge joins two members of one uniformly chosen
/// community, except that with probability `mixing` both endpoints are drawn
/// from the whole graph.
pub fn community_chung_lu<R: Rng + ?Sized>(
    weights: &[f64],
    communities: usize,
    edges: usize,
    mixing: f64,
    rng: &mut R,
) -> Graph {
    let n = weights.len();
    let communities = communities.clamp(1, n.max(1));
    let all = WeightedPool::new((0..n).collect(), weights);
    let pools: Vec<_> =
        (0..communities).map(|c| WeightedPool::new((c..n).step_by(communities).collect(), weights)).collect();
    let pairs: Vec<_> = (0..edges)
        .map(|_| {
            let pool = if rng.random::<f64>() < mixing { &all } else { &pools[rng.random_range(0..communities)] };
            (pool.draw(rng), pool.draw(rng))
        })
        .collect();
    Graph::from_edges(n, &pairs)
}

/// Nodes drawn with probability proportional to their weight.
struct WeightedPool {
    nodes: Vec<usize>,
    cumulative: Vec<f64>,
}

impl WeightedPool {
    fn new(nodes: Vec<usize>, weights: &[f64]) -> Self {
        let mut total = 0.0;
        let cumulative = nodes
            .iter()
            .map(|&v| {
                total += weights[v];
                total
            })
            .collect();
        WeightedPool { nodes, cumulative }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let x = rng.random::<f64>() * self.cumulative.last().copied().unwrap_or(0.0);
        self.nodes[self.cumulative.partition_point(|&c| c <= x).min(self.nodes.len() - 1)]
    }
}
