//! Dense analysis of small walk matrices.
//!
//! The "second-largest eigenvalue" μ reported here is the real part of the
//! eigenvalue with the second-largest real part, which is signed. The largest
//! modulus among the non-leading eigenvalues is reported separately as `slem`.

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::estimation::Distribution;
use crate::graph::Graph;
use crate::samplers::{Chain, Sampler};
use crate::seeds::splitmix64;

pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Imaginary parts below this are treated as zero for `is_real_spectrum`.
const REAL_TOLERANCE: f64 = 1e-10;

/// Dense row-stochastic transition matrix of a bound sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkMatrix {
    pub sampler: Sampler,
    /// `C` after binding; MD reports `d_max`.
    pub c: Option<usize>,
    entries: DMatrix<f64>,
}

impl WalkMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    #[inline]
    pub fn get(&self, v: usize, u: usize) -> f64 {
        self.entries[(v, u)]
    }

    pub fn row(&self, v: usize) -> Vec<f64> {
        self.entries.row(v).iter().copied().collect()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

pub fn dense_transition_matrix(graph: &Graph, sampler: Sampler) -> Result<WalkMatrix> {
    dense_transition_matrix_capped(graph, sampler, DEFAULT_DENSE_CAP)
}

pub fn dense_transition_matrix_capped(graph: &Graph, sampler: Sampler, cap: usize) -> Result<WalkMatrix> {
    let n = graph.node_count();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let chain = Chain::new(graph, sampler)?;
    let mut entries = DMatrix::zeros(n, n);
    for v in 0..n {
        for (u, p) in chain.transition_row(v)?.into_iter().enumerate() {
            entries[(v, u)] = p;
        }
    }
    Ok(WalkMatrix { sampler, c: chain.c(), entries })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Sorted by descending real part (ties by descending imaginary part).
    #[serde(serialize_with = "complex_pairs")]
    pub eigenvalues: Vec<Complex64>,
    #[serde(rename = "mu")]
    pub second_largest_signed: f64,
    pub slem: f64,
    pub is_real_spectrum: bool,
}

fn complex_pairs<S: Serializer>(values: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for z in values {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// All eigenvalues of `matrix` via a real Schur decomposition.
///
/// nalgebra's Francis iteration has no exceptional shifts and can stall on
/// highly structured inputs (the walk on a 3-node path is one). When it does,
/// the decomposition is retried on `Qᵀ A Q` for a few fixed pseudo-random
/// orthogonal `Q`, which has the same spectrum.
pub fn eigenvalues(matrix: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    const RETRIES: u64 = 8;
    let n = matrix.nrows();
    let max_iters = 1000 * n.max(1);
    let mut schur = Schur::try_new(matrix.clone(), f64::EPSILON, max_iters);
    let mut attempt = 0;
    while schur.is_none() && attempt < RETRIES {
        attempt += 1;
        let mut state = splitmix64(attempt);
        let noise = DMatrix::from_fn(n, n, |_, _| {
            state = splitmix64(state);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        });
        let q = noise.qr().q();
        schur = Schur::try_new(q.transpose() * matrix * &q, f64::EPSILON, max_iters);
    }
    let mut values: Vec<Complex64> = schur.ok_or(Error::EigenSolver)?.complex_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    Ok(values)
}

pub fn spectrum(matrix: &WalkMatrix) -> Result<SpectrumReport> {
    let eigenvalues = eigenvalues(&matrix.entries)?;
    let second_largest_signed = eigenvalues.get(1).map_or(0.0, |z| z.re);
    let slem = eigenvalues.iter().skip(1).map(|z| z.norm()).fold(0.0, f64::max);
    let is_real_spectrum = eigenvalues.iter().all(|z| z.im.abs() <= REAL_TOLERANCE);
    Ok(SpectrumReport { eigenvalues, second_largest_signed, slem, is_real_spectrum })
}

/// `Σ_v π_v P[v, v]`: the stationary probability that two consecutive
/// observations are the same node.
pub fn expected_repeat_probability(chain: &Chain<'_>, pi: &Distribution) -> f64 {
    pi.iter().map(|(v, p)| p * chain.stay_probability(v)).sum()
}

/// `max_{v,u} |π_v P[v,u] − π_u P[u,v]|`; zero exactly when `π` satisfies
/// detailed balance.
pub fn reversibility_residual(matrix: &WalkMatrix, pi: &Distribution) -> f64 {
    let n = matrix.size();
    let mass = pi.masses();
    let mut worst: f64 = 0.0;
    for v in 0..n {
        for u in v + 1..n {
            let gap = (mass[v] * matrix.get(v, u) - mass[u] * matrix.get(u, v)).abs();
            worst = worst.max(gap);
        }
    }
    worst
}
