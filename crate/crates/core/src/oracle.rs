//! Reference computations that share no code path with the solvers they
//! check. Compiled for tests and behind the `test-oracles` feature.

use num_complex::Complex64;

type Rows = [Vec<f64>];

/// Coefficients `c_0..=c_n` of `det(λI − A)` (monic, `c_n = 1`) by the
/// Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &Rows) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum::<f64>();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let trace: f64 = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<f64>()).sum();
        coeffs[n - k] = -trace / k as f64;
    }
    coeffs
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Roots of a monic polynomial by Durand–Kerner iteration. Multiple roots are
/// only resolved to roughly `ε^(1/multiplicity)`.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..10_000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let delta = horner(coeffs, roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-16 {
            break;
        }
    }
    roots
}

pub fn charpoly_eigenvalues(a: &Rows) -> Vec<Complex64> {
    polynomial_roots(&characteristic_polynomial(a))
}

/// Largest distance in an optimal pairing of two small multisets (exhaustive
/// over permutations, so keep them short).
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    fn go(a: &[Complex64], b: &mut Vec<Complex64>, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        let Some((first, rest)) = a.split_first() else {
            *best = worst;
            return;
        };
        for i in 0..b.len() {
            let z = b.swap_remove(i);
            go(rest, b, worst.max((first - z).norm()), best);
            b.push(z);
            let last = b.len() - 1;
            b.swap(i, last);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), 0.0, &mut best);
    best
}

/// Stationary law of a row-stochastic matrix by Gaussian elimination on
/// `(Pᵀ − I) π = 0` with one equation replaced by `Σ π = 1`.
#[allow(clippy::needless_range_loop)]
pub fn dense_stationary(p: &Rows) -> Vec<f64> {
    let n = p.len();
    let mut a: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| p[j][i] - if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut b = vec![0.0; n];
    a[n - 1] = vec![1.0; n];
    b[n - 1] = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}
