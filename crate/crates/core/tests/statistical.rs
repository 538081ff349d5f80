//! Seeded Monte Carlo checks. Every seed is fixed, so these are deterministic;
//! the tolerances are wide enough that any seed would pass with high
//! probability.

use wjump_core::generators::{random_connected, worked_example};
use wjump_core::samplers::{walk_rng, NumericOptions};
use wjump_core::seeds::repetition_seed;
use wjump_core::spectral::expected_repeat_probability;
use wjump_core::{ht_ratio_estimate, run_walk, Chain, Distribution, Graph, Sampler, WalkConfig};

fn visit_frequencies(g: &Graph, trace: &[usize]) -> Distribution {
    let mut counts = vec![0.0; g.node_count()];
    for &v in trace {
        counts[v] += 1.0;
    }
    Distribution::from_weights(counts)
}

#[test]
fn step_matches_exact_row() {
    let g = worked_example();
    let chain = Chain::new(&g, Sampler::Wjrw { c: 3 }).unwrap();
    let node = g.node_of(2).unwrap();
    let expected = chain.transition_row(node).unwrap();
    let draws = 1_000_000;
    let mut counts = [0usize; 5];
    let mut rng = walk_rng(91);
    for _ in 0..draws {
        counts[chain.step(node, &mut rng).unwrap()] += 1;
    }
    let mut chi2 = 0.0;
    for (u, &p) in expected.iter().enumerate() {
        let observed = counts[u] as f64;
        if p == 0.0 {
            assert_eq!(counts[u], 0, "impossible transition to {u}");
            continue;
        }
        let mean = p * draws as f64;
        let sd = (mean * (1.0 - p)).sqrt();
        assert!((observed - mean).abs() < 3.0 * sd, "target {u}: {observed} vs {mean}");
        chi2 += (observed - mean).powi(2) / mean;
    }
    // 3 degrees of freedom, upper 0.1% point.
    assert!(chi2 < 16.27, "chi-square {chi2}");
}

#[test]
fn long_walk_frequencies_match_stationary() {
    let g = worked_example();
    let truth = [4.0, 3.0, 3.0, 3.0, 3.0].map(|w| w / 16.0);
    for sampler in [Sampler::Gmd { c: 3 }, Sampler::Wjrw { c: 3 }] {
        let trace = run_walk(&g, &WalkConfig::new(sampler, 1_000_000, 8)).unwrap();
        let freq = visit_frequencies(&g, trace.nodes());
        for (v, p) in freq.iter() {
            assert!((p - truth[v]).abs() < 0.01 * truth[v] + 2e-3, "{sampler} node {v}: {p}");
        }
    }
}

#[test]
fn empirical_law_approaches_stationary() {
    let mut rng = walk_rng(1234);
    let g = random_connected(12, 0.2, &mut rng);
    let c = (g.max_degree() / 2).max(2);
    for sampler in [Sampler::Srw, Sampler::Gmd { c }, Sampler::Wjrw { c }, Sampler::Rwe { alpha: 1.0 }] {
        let pi = Chain::new(&g, sampler).unwrap().stationary_numeric(NumericOptions::default()).unwrap();
        let mut previous = f64::INFINITY;
        for budget in [1_000, 10_000, 100_000, 1_000_000] {
            let seeds = 5;
            let gap: f64 = (0..seeds)
                .map(|s| {
                    let trace = run_walk(&g, &WalkConfig::new(sampler, budget, repetition_seed(17, s))).unwrap();
                    visit_frequencies(&g, trace.nodes()).l1_distance(&pi)
                })
                .sum::<f64>()
                / seeds as f64;
            assert!(gap < previous, "{sampler} B={budget}: {gap} after {previous}");
            previous = gap;
        }
        assert!(previous < 0.01);
    }
}

#[test]
fn simple_walk_estimates_degree_two_fraction() {
    let g = worked_example();
    let f = |v: usize| f64::from(g.degree(v) == 2);
    let seeds = 20;
    let mean: f64 = (0..seeds)
        .map(|s| {
            let trace = run_walk(&g, &WalkConfig::new(Sampler::Srw, 200_000, repetition_seed(5, s))).unwrap();
            ht_ratio_estimate(trace.nodes(), |v| g.degree(v) as f64, f).unwrap()
        })
        .sum::<f64>()
        / seeds as f64;
    assert!((mean - 0.4).abs() <= 0.02, "{mean}");
}

#[test]
fn replicated_stationary_trace_is_nearly_exact() {
    let mut rng = walk_rng(3);
    let g = random_connected(30, 0.1, &mut rng);
    let theta = (0..g.node_count()).map(|v| g.degree(v) as f64).sum::<f64>() / g.node_count() as f64;
    let k = 1_000_000.0;
    for sampler in
        [Sampler::Srw, Sampler::Md, Sampler::Gmd { c: 3 }, Sampler::Wjrw { c: 3 }, Sampler::Rwe { alpha: 2.0 }]
    {
        let pi = Chain::new(&g, sampler).unwrap().stationary_numeric(NumericOptions::default()).unwrap();
        let mut trace = Vec::new();
        for (v, p) in pi.iter() {
            trace.extend(std::iter::repeat_n(v, (k * p).round() as usize));
        }
        let estimate = ht_ratio_estimate(&trace, |v| pi.mass_at(v), |v| g.degree(v) as f64).unwrap();
        assert!((estimate - theta).abs() <= 1e-3, "{sampler}: {estimate} vs {theta}");
    }
}

#[test]
fn estimation_error_shrinks_with_budget() {
    let mut rng = walk_rng(50);
    let g = random_connected(50, 0.06, &mut rng);
    let median = {
        let mut d: Vec<usize> = g.degrees().collect();
        d.sort_unstable();
        d[d.len() / 2]
    };
    let f = |v: usize| f64::from(g.degree(v) <= median);
    let theta = (0..50).map(f).sum::<f64>() / 50.0;
    let c = (g.max_degree() / 2).max(2);
    for sampler in
        [Sampler::Srw, Sampler::Rwe { alpha: g.average_degree() }, Sampler::Md, Sampler::Gmd { c }, Sampler::Wjrw { c }]
    {
        let pi = Chain::new(&g, sampler).unwrap().stationary_numeric(NumericOptions::default()).unwrap();
        let mut previous = f64::INFINITY;
        for budget in [1_000, 10_000, 100_000] {
            let error: f64 = (0..20)
                .map(|s| {
                    let trace = run_walk(&g, &WalkConfig::new(sampler, budget, repetition_seed(99, s))).unwrap();
                    (ht_ratio_estimate(trace.nodes(), |v| pi.mass_at(v), f).unwrap() - theta).abs()
                })
                .sum::<f64>()
                / 20.0;
            assert!(error <= previous, "{sampler} B={budget}: {error} after {previous}");
            previous = error;
        }
    }
}

#[test]
fn repeat_probability_ordering_on_random_graphs() {
    let mut rng = walk_rng(2025);
    let mut graphs = 0;
    let mut comparisons = 0;
    while graphs < 200 {
        let n = 5 + graphs % 8;
        let g = random_connected(n, 0.35, &mut rng);
        graphs += 1;
        let repeat = |s| {
            let chain = Chain::new(&g, s).unwrap();
            let pi = chain.stationary_numeric(NumericOptions::default()).unwrap();
            expected_repeat_probability(&chain, &pi)
        };
        let md = repeat(Sampler::Md);
        for c in g.min_degree() + 1..g.max_degree() {
            let gmd = repeat(Sampler::Gmd { c });
            let wjrw = repeat(Sampler::Wjrw { c });
            assert!(md - gmd >= -1e-12 && gmd - wjrw >= -1e-12, "n={n} C={c}: {md} {gmd} {wjrw}");
            comparisons += 1;
        }
    }
    assert!(comparisons > 200);
}
