use super::{Chain, Leftover};
use crate::error::{Error, Result};
use crate::estimation::Distribution;

/// Default ℓ₁ residual bound `‖πP − π‖₁` for [`Chain::stationary_numeric`].
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_iters: DEFAULT_MAX_ITERS }
    }
}

impl Chain<'_> {
    /// Writes `πP` into `out` in `O(n + m)`: edge flow is gathered over the
    /// (symmetric) adjacency and the leftover mass is applied as a rank-one
    /// term.
    pub fn push_forward(&self, pi: &[f64], out: &mut [f64]) {
        let g = self.graph;
        let n = g.node_count();
        let mut flow = vec![0.0; n];
        let mut leftover = 0.0;
        for v in 0..n {
            let w = self.normalizer(v);
            if w > 0.0 {
                flow[v] = pi[v] / w;
                leftover += pi[v] * self.leftover_probability(v);
            }
        }
        for (u, slot) in out.iter_mut().enumerate() {
            *slot = g.neighbors(u).iter().map(|&v| flow[v]).sum();
        }
        match self.leftover {
            Leftover::None => {}
            Leftover::Stay => {
                for (u, slot) in out.iter_mut().enumerate() {
                    *slot += pi[u] * self.leftover_probability(u);
                }
            }
            Leftover::Everywhere => {
                let share = leftover / n as f64;
                out.iter_mut().for_each(|slot| *slot += share);
            }
            Leftover::JumpSet => {
                let u = self.jumps.as_ref().expect("bound jump set");
                if !u.is_empty() {
                    let share = leftover / u.size() as f64;
                    for &t in u.members() {
                        out[t] += share;
                    }
                }
            }
        }
    }

    /// Stationary law by fixed-point iteration on the lazy chain `½(I + P)`,
    /// which has the same stationary law as `P` and is aperiodic. Starts from
    /// the uniform law and stops once `‖πP − π‖₁ <= opts.tol`.
    pub fn stationary_numeric(&self, opts: NumericOptions) -> Result<Distribution> {
        let n = self.graph.node_count();
        for v in 0..n {
            if self.normalizer(v) <= 0.0 {
                return Err(Error::NoOutgoingTransition { node: v });
            }
        }
        let mut pi = vec![1.0 / n as f64; n];
        let mut next = vec![0.0; n];
        let mut residual = f64::INFINITY;
        for _ in 0..opts.max_iters {
            self.push_forward(&pi, &mut next);
            residual = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
            if residual <= opts.tol {
                return Ok(Distribution::from_weights(pi));
            }
            let mut total = 0.0;
            for (p, q) in pi.iter_mut().zip(&next) {
                *p = 0.5 * (*p + q);
                total += *p;
            }
            pi.iter_mut().for_each(|p| *p /= total);
        }
        Err(Error::NotConverged { iterations: opts.max_iters, residual })
    }
}
