use proptest::prelude::*;
use wjump_core::generators::random_connected;
use wjump_core::graph::parse_edge_list_str;
use wjump_core::samplers::{walk_rng, NumericOptions};
use wjump_core::{
    degree_distribution_estimate, dense_transition_matrix, ht_ratio_estimate, jump_set, kl_divergence, Chain,
    Distribution, Graph, Sampler,
};

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..0.6f64, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, &mut walk_rng(seed)))
}

fn edge_list() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0..40u64, 0..40u64), 1..120)
}

fn all_samplers(g: &Graph, c: usize) -> Vec<Sampler> {
    vec![Sampler::Srw, Sampler::Rwe { alpha: g.average_degree() }, Sampler::Md, Sampler::Gmd { c }, Sampler::Wjrw { c }]
}

fn l1(a: &Distribution, b: &Distribution) -> f64 {
    a.l1_distance(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parsed_graph_invariants(pairs in edge_list()) {
        let text: String = pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
        let Ok((g, report)) = parse_edge_list_str(&text) else {
            // Only self-loops in the input.
            prop_assert!(pairs.iter().all(|(a, b)| a == b));
            return Ok(());
        };
        let self_loops = pairs.iter().filter(|(a, b)| a == b).count();
        prop_assert_eq!(report.dropped_self_loops, self_loops);
        prop_assert_eq!(report.kept_edges + report.dropped_duplicates + self_loops, pairs.len());
        let degree_sum: usize = g.degrees().sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for v in 0..g.node_count() {
            let nb = g.neighbors(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&v));
            for &u in nb {
                prop_assert!(g.has_edge(u, v));
            }
        }
        prop_assert_eq!(g.max_degree(), g.degrees().max().unwrap());

        let mut out = Vec::new();
        g.write_edge_list(&mut out).unwrap();
        let (again, _) = parse_edge_list_str(std::str::from_utf8(&out).unwrap()).unwrap();
        prop_assert_eq!(again.edge_count(), g.edge_count());
        for (u, v) in g.edges() {
            let (a, b) = (again.node_of(g.label(u)).unwrap(), again.node_of(g.label(v)).unwrap());
            prop_assert!(again.has_edge(a, b));
        }

        let lcc = g.largest_connected_component();
        prop_assert!(lcc.is_connected());
        let (comp, count) = g.components();
        let mut sizes = vec![0; count];
        for c in comp {
            sizes[c] += 1;
        }
        prop_assert_eq!(lcc.node_count(), sizes.into_iter().max().unwrap());
    }

    #[test]
    fn rows_are_stochastic(g in connected_graph(50), c_pick in 1..60usize) {
        let c = 1 + c_pick % (g.max_degree() + 3);
        for sampler in all_samplers(&g, c) {
            let Ok(chain) = Chain::new(&g, sampler) else {
                // A single node has no outgoing transition under SRW.
                prop_assert_eq!(g.node_count(), 1);
                continue;
            };
            for v in 0..g.node_count() {
                let Ok(row) = chain.transition_row(v) else { continue };
                prop_assert!(row.iter().all(|&p| (0.0..=1.0 + 1e-15).contains(&p)));
                let total: f64 = row.iter().sum();
                prop_assert!((total - 1.0).abs() <= 1e-12, "{} row {} sums to {}", sampler, v, total);
            }
        }
    }

    #[test]
    fn low_threshold_reduces_to_simple_walk(g in connected_graph(30)) {
        prop_assume!(g.node_count() >= 2);
        let srw = dense_transition_matrix(&g, Sampler::Srw).unwrap();
        for c in 1..=g.min_degree() {
            for s in [Sampler::Gmd { c }, Sampler::Wjrw { c }] {
                let m = dense_transition_matrix(&g, s).unwrap();
                prop_assert_eq!(m.as_matrix(), srw.as_matrix());
            }
        }
        let md = dense_transition_matrix(&g, Sampler::Md).unwrap();
        let gmd = dense_transition_matrix(&g, Sampler::Gmd { c: g.max_degree() }).unwrap();
        prop_assert_eq!(md.as_matrix(), gmd.as_matrix());
    }

    #[test]
    fn closed_forms_match_numeric(g in connected_graph(40), c_pick in 1..40usize) {
        prop_assume!(g.node_count() >= 2);
        let c = 1 + c_pick % g.max_degree();
        for sampler in all_samplers(&g, c).into_iter().take(4) {
            let chain = Chain::new(&g, sampler).unwrap();
            let numeric = chain.stationary_numeric(NumericOptions::default()).unwrap();
            let gap = l1(&numeric, &chain.stationary_closed_form());
            prop_assert!(gap <= 1e-10, "{}: gap {}", sampler, gap);
        }
    }

    #[test]
    fn jump_closed_form_exact_when_jump_set_is_regular(g in connected_graph(30), c_pick in 1..40usize) {
        prop_assume!(g.node_count() >= 2);
        let c = 1 + c_pick % (g.max_degree() + 2);
        let u = jump_set(&g, c);
        let degrees: Vec<usize> = u.members().iter().map(|&v| g.degree(v)).collect();
        let mut degrees = degrees.into_iter();
        let first = degrees.next();
        prop_assume!(degrees.all(|d| Some(d) == first));
        let chain = Chain::new(&g, Sampler::Wjrw { c }).unwrap();
        let numeric = chain.stationary_numeric(NumericOptions::default()).unwrap();
        prop_assert!(l1(&numeric, &chain.stationary_closed_form()) <= 1e-10);
    }

    #[test]
    fn ratio_estimate_is_scale_invariant(
        trace in prop::collection::vec(0..20usize, 1..200),
        weights in prop::collection::vec(0.01..10.0f64, 20),
        scale in 1e-6..1e6f64,
        values in prop::collection::vec(-5.0..5.0f64, 20),
        constant in -1e3..1e3f64,
    ) {
        let f = |v: usize| values[v];
        let base = ht_ratio_estimate(&trace, |v| weights[v], f).unwrap();
        let scaled = ht_ratio_estimate(&trace, |v| scale * weights[v], f).unwrap();
        prop_assert!((base - scaled).abs() <= 1e-12 * base.abs().max(1.0));
        let c = ht_ratio_estimate(&trace, |v| weights[v], |_| constant).unwrap();
        prop_assert!((c - constant).abs() <= 1e-15 * constant.abs());
    }

    #[test]
    fn degree_estimate_is_a_distribution(g in connected_graph(30), seed in any::<u64>(), len in 1..300usize) {
        prop_assume!(g.node_count() >= 2);
        let mut rng = walk_rng(seed);
        let trace: Vec<usize> = (0..len).map(|_| rand::Rng::random_range(&mut rng, 0..g.node_count())).collect();
        let est = degree_distribution_estimate(&trace, |v| g.degree(v) as f64, &g).unwrap();
        let total: f64 = est.masses().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        let truth = Distribution::degree_distribution(&g);
        prop_assert_eq!(est.support(), truth.support());
        prop_assert!(kl_divergence(&truth, &est) >= 0.0);
        prop_assert!(kl_divergence(&truth, &truth) <= 1e-9);
    }
}
