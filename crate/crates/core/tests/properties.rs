use ldd_core::exec::with_threads;
use ldd_core::graph::UNREACHED;
use ldd_core::{
    gen, load_edgelist, midpoint_witness_check, oracle_assign, partition, partition_once_with,
    save_edgelist, validate, Execution, Graph, GraphKind, RunConfig, ShiftAssignment, TieBreak,
};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![
        (1usize..=8, 1usize..=8).prop_map(|(rows, cols)| GraphKind::Grid { rows, cols }),
        (1usize..=64).prop_map(|n| GraphKind::Path { n }),
        (1usize..=16).prop_map(|n| GraphKind::Complete { n }),
        (1usize..=64, 0.0f64..0.2, any::<u64>()).prop_map(|(n, p, seed)| GraphKind::Gnp {
            n,
            p,
            seed
        }),
    ]
    .prop_map(|kind| gen::generate(kind).unwrap())
}

fn tiebreak() -> impl Strategy<Value = TieBreak> {
    prop_oneof![Just(TieBreak::Fractional), Just(TieBreak::Permutation)]
}

fn beta() -> impl Strategy<Value = f64> {
    (1u32..=10).prop_map(|k| k as f64 * 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn engine_matches_oracle(g in small_graph(), beta in beta(), seed in any::<u64>(), mode in tiebreak()) {
        let s = ShiftAssignment::sample(g.n(), beta, seed, mode).unwrap();
        let expected = oracle_assign(&g, &s);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let run = partition_once_with(&g, &s, exec).unwrap();
            prop_assert_eq!(&run.decomposition, &expected);
        }
    }

    #[test]
    fn output_is_schedule_independent(side in 20usize..60, beta in beta(), seed in any::<u64>(), mode in tiebreak()) {
        let g = gen::grid(side, side).unwrap();
        let s = ShiftAssignment::sample(g.n(), beta / 10.0, seed, mode).unwrap();
        let reference = partition_once_with(&g, &s, Execution::Sequential).unwrap();
        for threads in [1, 2, 4] {
            let run = with_threads(threads, || partition_once_with(&g, &s, Execution::Parallel).unwrap());
            prop_assert_eq!(&run, &reference);
        }
    }

    #[test]
    fn pieces_are_closed_under_bfs_predecessors(g in small_graph(), beta in beta(), seed in any::<u64>(), mode in tiebreak()) {
        let s = ShiftAssignment::sample(g.n(), beta, seed, mode).unwrap();
        let run = partition_once_with(&g, &s, Execution::default()).unwrap();
        let owner = run.decomposition.owner();
        for (center, members) in run.decomposition.pieces() {
            let dist = g.bfs(center);
            for &v in &members {
                prop_assert!(dist[v] != UNREACHED);
                if v != center {
                    let closed = g.neighbors(v).iter().any(|&w| owner[w] == center && dist[w] + 1 == dist[v]);
                    prop_assert!(closed, "vertex {} of piece {} has no in-piece predecessor", v, center);
                }
                prop_assert!(dist[v] as f64 <= s.delta_max());
                if mode == TieBreak::Fractional {
                    prop_assert!(dist[v] as f64 <= s.delta(center) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn work_and_level_bounds(g in small_graph(), beta in beta(), seed in any::<u64>(), mode in tiebreak()) {
        let s = ShiftAssignment::sample(g.n(), beta, seed, mode).unwrap();
        let r = partition_once_with(&g, &s, Execution::default()).unwrap().report;
        prop_assert!(r.edge_touches <= (2 * g.m() + g.n()) as u64);
        prop_assert!(r.levels as f64 <= r.delta_max.ceil() + r.max_piece_radius as f64 + 1.0);
    }

    #[test]
    fn partition_output_validates(g in small_graph(), beta in beta(), seed in any::<u64>(), mode in tiebreak()) {
        let cfg = RunConfig::new(beta, seed).with_tiebreak(mode);
        let run = partition(&g, &cfg).unwrap().into_run();
        let v = validate(&g, &run.decomposition, beta, None);
        prop_assert!(v.is_partition, "{:?}", v.violations);
        prop_assert!(v.pieces_connected);
        prop_assert!(v.max_strong_diameter as f64 <= 2.0 * run.report.delta_max);
        prop_assert!(v.max_strong_diameter <= 2 * run.report.max_piece_radius);
        prop_assert_eq!(v.cut_edges, run.report.cut_edges);
        prop_assert!((0.0..=1.0).contains(&v.cut_fraction));
    }

    #[test]
    fn cut_edges_have_midpoint_witnesses(g in small_graph(), beta in beta(), seed in any::<u64>()) {
        let s = ShiftAssignment::sample(g.n(), beta, seed, TieBreak::Fractional).unwrap();
        let run = partition_once_with(&g, &s, Execution::default()).unwrap();
        prop_assert!(midpoint_witness_check(&g, &s, &run.decomposition).is_empty());
    }

    #[test]
    fn from_edges_normalizes(n in 1usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..120)) {
        let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        g.check_invariants().unwrap();
        for &(u, v) in &edges {
            prop_assert!(g.has_edge(u, v) && g.has_edge(v, u));
        }
        let mut buf = Vec::new();
        save_edgelist(&g, &mut buf).unwrap();
        prop_assert_eq!(load_edgelist(buf.as_slice()).unwrap(), g);
    }
}
