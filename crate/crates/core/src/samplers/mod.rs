//! The five walk processes.
//!
//! Every sampler moves from `v` along each incident edge with probability
//! `1 / w_v` for a per-node normalizer `w_v >= d_v`. The remaining mass
//! `(w_v - d_v) / w_v` is what distinguishes them:
//!
//! | sampler | `w_v`            | leftover mass goes to            |
//! |---------|------------------|----------------------------------|
//! | SRW     | `d_v`            | (none)                           |
//! | RWE(α)  | `d_v + α`        | uniform over all nodes           |
//! | MD      | `max(d_max, d_v)`| a self-loop at `v`               |
//! | GMD(C)  | `max(C, d_v)`    | a self-loop at `v`               |
//! | WJRW(C) | `max(C, d_v)`    | uniform over `U = {u : d_u < C}` |
//!
//! [`Chain`] binds a [`Sampler`] to a graph and exposes exact transition rows,
//! a stochastic stepper and the stationary solvers.

mod stationary;
mod walk;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use stationary::{NumericOptions, DEFAULT_MAX_ITERS, DEFAULT_TOL};
pub use walk::{run_walk, walk_rng, StartPolicy, Trace, WalkConfig, WalkRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Sampler {
    Srw,
    Rwe { alpha: f64 },
    Md,
    Gmd { c: usize },
    Wjrw { c: usize },
}

impl Sampler {
    pub fn name(&self) -> &'static str {
        match self {
            Sampler::Srw => "srw",
            Sampler::Rwe { .. } => "rwe",
            Sampler::Md => "md",
            Sampler::Gmd { .. } => "gmd",
            Sampler::Wjrw { .. } => "wjrw",
        }
    }

    /// The configured `C`, if any. MD has none until bound to a graph.
    pub fn c(&self) -> Option<usize> {
        match *self {
            Sampler::Gmd { c } | Sampler::Wjrw { c } => Some(c),
            _ => None,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Sampler::Rwe { alpha } => Some(alpha),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Sampler::Rwe { alpha } if !(alpha.is_finite() && alpha >= 0.0) => {
                Err(Error::InvalidParameter(format!("alpha must be finite and nonnegative, got {alpha}")))
            }
            Sampler::Gmd { c: 0 } | Sampler::Wjrw { c: 0 } => {
                Err(Error::InvalidParameter("C must be a positive integer".into()))
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for Sampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Sampler::Rwe { alpha } => write!(f, "rwe(alpha={alpha})"),
            Sampler::Gmd { c } => write!(f, "gmd(C={c})"),
            Sampler::Wjrw { c } => write!(f, "wjrw(C={c})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Nodes whose degree is below `C`, i.e. the targets of a weighted jump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpSet {
    members: Vec<usize>,
    total_alpha: usize,
}

impl JumpSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Σ_{v ∈ U} (C − d_v)`.
    pub fn total_alpha(&self) -> usize {
        self.total_alpha
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

pub fn jump_set(graph: &Graph, c: usize) -> JumpSet {
    let mut members = Vec::new();
    let mut total_alpha = 0;
    for (v, d) in graph.degrees().enumerate() {
        if d < c {
            members.push(v);
            total_alpha += c - d;
        }
    }
    JumpSet { members, total_alpha }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Leftover {
    None,
    Stay,
    Everywhere,
    JumpSet,
}

/// A sampler bound to a graph: the Markov chain it defines.
#[derive(Debug, Clone)]
pub struct Chain<'g> {
    graph: &'g Graph,
    sampler: Sampler,
    c: Option<usize>,
    alpha: f64,
    leftover: Leftover,
    jumps: Option<JumpSet>,
}

impl<'g> Chain<'g> {
    /// Binds `sampler` to `graph`. MD resolves `C` to the graph's maximum degree.
    pub fn new(graph: &'g Graph, sampler: Sampler) -> Result<Self> {
        sampler.validate()?;
        let (c, alpha, leftover) = match sampler {
            Sampler::Srw => (None, 0.0, Leftover::None),
            Sampler::Rwe { alpha } => (None, alpha, Leftover::Everywhere),
            Sampler::Md => (Some(graph.max_degree().max(1)), 0.0, Leftover::Stay),
            Sampler::Gmd { c } => (Some(c), 0.0, Leftover::Stay),
            Sampler::Wjrw { c } => (Some(c), 0.0, Leftover::JumpSet),
        };
        let jumps = match leftover {
            Leftover::JumpSet => c.map(|c| jump_set(graph, c)),
            _ => None,
        };
        Ok(Self { graph, sampler, c, alpha, leftover, jumps })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn sampler(&self) -> Sampler {
        self.sampler
    }

    /// `C` after binding (MD reports the maximum degree).
    pub fn c(&self) -> Option<usize> {
        self.c
    }

    pub fn jump_set(&self) -> Option<&JumpSet> {
        self.jumps.as_ref()
    }

    /// Per-node normalizer `w_v`: each neighbor is reached with `1 / w_v`.
    #[inline]
    pub fn normalizer(&self, v: usize) -> f64 {
        let d = self.graph.degree(v);
        match self.leftover {
            Leftover::None => d as f64,
            Leftover::Everywhere => d as f64 + self.alpha,
            Leftover::Stay | Leftover::JumpSet => self.c.unwrap_or(0).max(d) as f64,
        }
    }

    /// Probability of leaving the graph's edges at `v` (self-loop or jump).
    #[inline]
    pub fn leftover_probability(&self, v: usize) -> f64 {
        let w = self.normalizer(v);
        (w - self.graph.degree(v) as f64) / w
    }

    fn check(&self, v: usize) -> Result<f64> {
        let n = self.graph.node_count();
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
        let w = self.normalizer(v);
        if w <= 0.0 {
            return Err(Error::NoOutgoingTransition { node: v });
        }
        Ok(w)
    }

    /// Exact row `P[v, ·]` as a dense vector over all nodes.
    pub fn transition_row(&self, v: usize) -> Result<Vec<f64>> {
        let w = self.check(v)?;
        let n = self.graph.node_count();
        let d = self.graph.degree(v) as f64;
        let mut row = vec![0.0; n];
        match self.leftover {
            Leftover::None | Leftover::Stay => {}
            Leftover::Everywhere => {
                let jump = self.alpha / (w * n as f64);
                row.iter_mut().for_each(|p| *p = jump);
            }
            Leftover::JumpSet => {
                let u = self.jumps.as_ref().expect("bound jump set");
                if w > d {
                    let jump = (w - d) / (w * u.size() as f64);
                    for &t in u.members() {
                        row[t] = jump;
                    }
                }
            }
        }
        if self.leftover == Leftover::Stay {
            row[v] = (w - d) / w;
        }
        for &u in self.graph.neighbors(v) {
            row[u] += 1.0 / w;
        }
        Ok(row)
    }

    /// `P[v, v]`, without building the row.
    pub fn stay_probability(&self, v: usize) -> f64 {
        let w = self.normalizer(v);
        if w <= 0.0 {
            return 0.0;
        }
        let d = self.graph.degree(v) as f64;
        match self.leftover {
            Leftover::None => 0.0,
            Leftover::Everywhere => self.alpha / (w * self.graph.node_count() as f64),
            Leftover::Stay => (w - d) / w,
            Leftover::JumpSet => {
                let u = self.jumps.as_ref().expect("bound jump set");
                if u.contains(v) {
                    (w - d) / (w * u.size() as f64)
                } else {
                    0.0
                }
            }
        }
    }

    /// Draws the next node: first the mode (edge or leftover), then the
    /// target within that mode.
    pub fn step<R: Rng + ?Sized>(&self, v: usize, rng: &mut R) -> Result<usize> {
        let w = self.check(v)?;
        let nbrs = self.graph.neighbors(v);
        let d = nbrs.len();
        let next = match self.leftover {
            Leftover::None => nbrs[rng.random_range(0..d)],
            Leftover::Everywhere => {
                if d > 0 && rng.random::<f64>() * w < d as f64 {
                    nbrs[rng.random_range(0..d)]
                } else {
                    rng.random_range(0..self.graph.node_count())
                }
            }
            Leftover::Stay | Leftover::JumpSet => {
                let k = rng.random_range(0..w as usize);
                if k < d {
                    nbrs[k]
                } else if self.leftover == Leftover::Stay {
                    v
                } else {
                    let u = self.jumps.as_ref().expect("bound jump set").members();
                    u[rng.random_range(0..u.len())]
                }
            }
        };
        Ok(next)
    }

    /// Unnormalized stationary weights given by the closed forms: `d_v` for
    /// SRW, `d_v + α` for RWE, `max(C, d_v)` for MD and GMD, and for WJRW
    /// `d_v + 𝟙{d_v < C} · Σα_u / |U|`.
    ///
    /// The WJRW form is exact when every member of `U` has the same degree but
    /// not in general; [`Chain::stationary_numeric`] is the reference.
    pub fn closed_form_weights(&self) -> Vec<f64> {
        let g = self.graph;
        match self.leftover {
            Leftover::JumpSet => {
                let u = self.jumps.as_ref().expect("bound jump set");
                let bonus = if u.is_empty() { 0.0 } else { u.total_alpha() as f64 / u.size() as f64 };
                let c = self.c.unwrap_or(0);
                g.degrees().map(|d| d as f64 + if d < c { bonus } else { 0.0 }).collect()
            }
            _ => (0..g.node_count()).map(|v| self.normalizer(v)).collect(),
        }
    }

    pub fn stationary_closed_form(&self) -> crate::estimation::Distribution {
        crate::estimation::Distribution::from_weights(self.closed_form_weights())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::worked_example;

    fn row(g: &Graph, s: Sampler, v: usize) -> Vec<f64> {
        Chain::new(g, s).unwrap().transition_row(v).unwrap()
    }

    fn assert_row(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < 1e-15, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn jump_set_examples() {
        let g = worked_example();
        let u = jump_set(&g, 3);
        assert_eq!(u.members(), &[1, 4]);
        assert_eq!((u.size(), u.total_alpha()), (2, 2));
        assert!(jump_set(&g, 2).is_empty());
        let all = jump_set(&g, 5);
        assert_eq!(all.members(), &[0, 1, 2, 3, 4]);
        assert_eq!(all.total_alpha(), 11);
    }

    #[test]
    fn worked_example_rows() {
        let g = worked_example();
        let third = 1.0 / 3.0;
        let sixth = 1.0 / 6.0;
        assert_row(&row(&g, Sampler::Wjrw { c: 3 }, 1), &[third, sixth, 0.0, third, sixth]);
        assert_row(&row(&g, Sampler::Gmd { c: 3 }, 1), &[third, third, 0.0, third, 0.0]);
        assert_row(&row(&g, Sampler::Wjrw { c: 3 }, 0), &[0.0, 0.25, 0.25, 0.25, 0.25]);
        assert_row(&row(&g, Sampler::Srw, 0), &[0.0, 0.25, 0.25, 0.25, 0.25]);
        let f = 1.0 / 15.0;
        assert_row(&row(&g, Sampler::Rwe { alpha: 1.0 }, 1), &[0.4, f, f, 0.4, f]);
    }

    #[test]
    fn md_binds_to_max_degree() {
        let g = worked_example();
        let chain = Chain::new(&g, Sampler::Md).unwrap();
        assert_eq!(chain.c(), Some(4));
        assert_row(&chain.transition_row(1).unwrap(), &[0.25, 0.5, 0.0, 0.25, 0.0]);
    }

    #[test]
    fn isolated_node_under_srw_has_no_transition() {
        let g = Graph::from_edges(3, &[(0, 1)]);
        let chain = Chain::new(&g, Sampler::Srw).unwrap();
        assert!(matches!(chain.transition_row(2), Err(Error::NoOutgoingTransition { node: 2 })));
        let mut rng = walk_rng(1);
        assert!(matches!(chain.step(2, &mut rng), Err(Error::NoOutgoingTransition { node: 2 })));
        assert!(matches!(chain.transition_row(9), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn invalid_parameters() {
        let g = worked_example();
        assert!(Chain::new(&g, Sampler::Gmd { c: 0 }).is_err());
        assert!(Chain::new(&g, Sampler::Wjrw { c: 0 }).is_err());
        assert!(Chain::new(&g, Sampler::Rwe { alpha: -1.0 }).is_err());
        assert!(Chain::new(&g, Sampler::Rwe { alpha: f64::NAN }).is_err());
    }

    #[test]
    fn stay_probability_matches_row_diagonal() {
        let g = worked_example();
        for s in [
            Sampler::Srw,
            Sampler::Rwe { alpha: 2.5 },
            Sampler::Md,
            Sampler::Gmd { c: 3 },
            Sampler::Wjrw { c: 3 },
            Sampler::Wjrw { c: 9 },
        ] {
            let chain = Chain::new(&g, s).unwrap();
            for v in 0..5 {
                assert_eq!(chain.stay_probability(v), chain.transition_row(v).unwrap()[v], "{s} at {v}");
            }
        }
    }

    #[test]
    fn star_leaf_always_returns_to_center() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let chain = Chain::new(&g, Sampler::Srw).unwrap();
        let mut rng = walk_rng(7);
        for _ in 0..100 {
            assert_eq!(chain.step(3, &mut rng).unwrap(), 0);
        }
    }

    #[test]
    fn closed_forms_on_worked_example() {
        let g = worked_example();
        let srw = Chain::new(&g, Sampler::Srw).unwrap().stationary_closed_form();
        for (v, p) in srw.masses().iter().enumerate() {
            assert!((p - [4.0, 2.0, 3.0, 3.0, 2.0][v] / 14.0).abs() < 1e-15);
        }
        let md = Chain::new(&g, Sampler::Md).unwrap().stationary_closed_form();
        assert!(md.masses().iter().all(|p| (p - 0.2).abs() < 1e-15));
        let wjrw = Chain::new(&g, Sampler::Wjrw { c: 3 }).unwrap().stationary_closed_form();
        for (v, p) in wjrw.masses().iter().enumerate() {
            assert!((p - [4.0, 3.0, 3.0, 3.0, 3.0][v] / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sampler_names_and_display() {
        assert_eq!(Sampler::Wjrw { c: 3 }.to_string(), "wjrw(C=3)");
        assert_eq!(Sampler::Md.name(), "md");
        assert_eq!(Sampler::Gmd { c: 4 }.c(), Some(4));
        assert_eq!(Sampler::Rwe { alpha: 0.5 }.alpha(), Some(0.5));
    }
}
