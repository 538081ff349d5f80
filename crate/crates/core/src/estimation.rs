//! Ratio estimation from walk traces and the distance measures used to score
//! the estimates.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default additive smoothing for [`kl_divergence`].
pub const KL_EPSILON: f64 = 1e-12;

/// A probability law over a finite set of categories (node ids or degrees).
///
/// The support is kept sorted and unique; masses are nonnegative and sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    support: Vec<usize>,
    mass: Vec<f64>,
}

impl Distribution {
    /// Normalizes per-node weights into a law over `0..weights.len()`.
    ///
    /// Panics if a weight is negative or not finite, or if all weights are 0.
    pub fn from_weights(weights: Vec<f64>) -> Self {
        let support = (0..weights.len()).collect();
        Self::normalized(support, weights)
    }

    /// Normalizes `(category, weight)` pairs. Repeated categories are merged.
    pub fn from_pairs<I: IntoIterator<Item = (usize, f64)>>(pairs: I) -> Self {
        let mut merged: BTreeMap<usize, f64> = BTreeMap::new();
        for (k, w) in pairs {
            *merged.entry(k).or_insert(0.0) += w;
        }
        let (support, weights) = merged.into_iter().unzip();
        Self::normalized(support, weights)
    }

    pub fn uniform(n: usize) -> Self {
        Self { support: (0..n).collect(), mass: vec![1.0 / n as f64; n] }
    }

    fn normalized(support: Vec<usize>, mut mass: Vec<f64>) -> Self {
        assert!(mass.iter().all(|w| w.is_finite() && *w >= 0.0), "distribution weights must be finite and nonnegative");
        let total: f64 = mass.iter().sum();
        assert!(total > 0.0, "distribution weights sum to zero");
        for w in &mut mass {
            *w /= total;
        }
        Self { support, mass }
    }

    /// Fraction of nodes with each degree.
    pub fn degree_distribution(graph: &Graph) -> Self {
        Self::from_pairs(graph.degrees().map(|d| (d, 1.0)))
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.support.iter().copied().zip(self.mass.iter().copied())
    }

    /// Mass at `category`, zero outside the support.
    pub fn mass_at(&self, category: usize) -> f64 {
        match self.support.binary_search(&category) {
            Ok(i) => self.mass[i],
            Err(_) => 0.0,
        }
    }

    /// Sum of absolute differences to `other` over the union of supports.
    pub fn l1_distance(&self, other: &Distribution) -> f64 {
        aligned(self, other).map(|(_, p, q)| (p - q).abs()).sum()
    }
}

/// Walks two sorted supports in lockstep, yielding `(category, p, q)` for the
/// union.
fn aligned<'a>(p: &'a Distribution, q: &'a Distribution) -> impl Iterator<Item = (usize, f64, f64)> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        let pk = p.support.get(i).copied();
        let qk = q.support.get(j).copied();
        match (pk, qk) {
            (None, None) => None,
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
                Some((a, p.mass[i - 1], q.mass[j - 1]))
            }
            (Some(a), Some(b)) if a < b => {
                i += 1;
                Some((a, p.mass[i - 1], 0.0))
            }
            (Some(a), None) => {
                i += 1;
                Some((a, p.mass[i - 1], 0.0))
            }
            (_, Some(b)) => {
                j += 1;
                Some((b, 0.0, q.mass[j - 1]))
            }
        }
    })
}

/// `½ Σ |p_k − q_k|`.
pub fn tvd(p: &Distribution, q: &Distribution) -> f64 {
    0.5 * p.l1_distance(q)
}

/// `KL(p ‖ q)` in nats, with `q` smoothed by [`KL_EPSILON`].
pub fn kl_divergence(true_p: &Distribution, est_q: &Distribution) -> f64 {
    kl_divergence_smoothed(true_p, est_q, KL_EPSILON)
}

/// `Σ p_k ln(p_k / q̃_k)` where `q̃` is `q` with `epsilon` added on every
/// category of `p`'s support and renormalized. Terms with `p_k = 0` vanish.
pub fn kl_divergence_smoothed(true_p: &Distribution, est_q: &Distribution, epsilon: f64) -> f64 {
    let q_total: f64 = est_q.mass.iter().sum::<f64>() + epsilon * true_p.len() as f64;
    let kl: f64 = aligned(true_p, est_q)
        .filter(|&(_, p, _)| p > 0.0)
        .map(|(_, p, q)| p * (p * q_total / (q + epsilon)).ln())
        .sum();
    // Rounding can leave a tiny negative value when p == q.
    kl.max(0.0)
}

fn inverse_weight(node: usize, pi: f64) -> Result<f64> {
    if pi > 0.0 && pi.is_finite() {
        Ok(1.0 / pi)
    } else {
        Err(Error::ZeroInclusionProbability { node })
    }
}

/// Neumaier summation. Long traces add millions of terms; without
/// compensation a constant `f` drifts visibly away from the constant.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// Ratio estimate `Σ f(s)/π(s) / Σ 1/π(s)` over every trace element, repeats
/// included. `weight` need not be normalized.
pub fn ht_ratio_estimate<W, F>(trace: &[usize], weight: W, f: F) -> Result<f64>
where
    W: Fn(usize) -> f64,
    F: Fn(usize) -> f64,
{
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut numerator = CompensatedSum::default();
    let mut denominator = CompensatedSum::default();
    for &s in trace {
        let g = inverse_weight(s, weight(s))?;
        numerator.add(f(s) * g);
        denominator.add(g);
    }
    Ok(numerator.value() / denominator.value())
}

/// Estimated fraction of nodes per degree. The support is every degree that
/// occurs in `graph`; degrees never visited by the trace carry zero mass.
pub fn degree_distribution_estimate<W>(trace: &[usize], weight: W, graph: &Graph) -> Result<Distribution>
where
    W: Fn(usize) -> f64,
{
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut mass: BTreeMap<usize, CompensatedSum> = graph.degrees().map(|d| (d, CompensatedSum::default())).collect();
    for &s in trace {
        let g = inverse_weight(s, weight(s))?;
        mass.get_mut(&graph.degree(s)).expect("trace node degree occurs in graph").add(g);
    }
    let (support, weights) = mass.into_iter().map(|(d, m)| (d, m.value())).unzip();
    Ok(Distribution::normalized(support, weights))
}

/// Number of distinct nodes in a trace.
pub fn unique_count(trace: &[usize]) -> usize {
    trace.iter().collect::<HashSet<_>>().len()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum EstimateValue {
    Scalar(f64),
    Degrees(Distribution),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub value: EstimateValue,
    pub sample_size: usize,
    pub unique_nodes: usize,
}

impl EstimateResult {
    pub fn scalar<W, F>(trace: &[usize], weight: W, f: F) -> Result<Self>
    where
        W: Fn(usize) -> f64,
        F: Fn(usize) -> f64,
    {
        Ok(Self {
            value: EstimateValue::Scalar(ht_ratio_estimate(trace, weight, f)?),
            sample_size: trace.len(),
            unique_nodes: unique_count(trace),
        })
    }

    pub fn degrees<W>(trace: &[usize], weight: W, graph: &Graph) -> Result<Self>
    where
        W: Fn(usize) -> f64,
    {
        Ok(Self {
            value: EstimateValue::Degrees(degree_distribution_estimate(trace, weight, graph)?),
            sample_size: trace.len(),
            unique_nodes: unique_count(trace),
        })
    }
}
