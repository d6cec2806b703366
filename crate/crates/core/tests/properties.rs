use proptest::prelude::*;

use hitlocal::bench::{read_records, write_records, BenchRecord, Reference};
use hitlocal::estimators::{meeting_time_estimate, meeting_time_trace, Algorithm, EstimatorParams};
use hitlocal::exact::{
    effective_resistance_pinv, exact_hitting_to, hitting_matrix, meeting_tail_curve,
    push_distribution, DEFAULT_TOL,
};
use hitlocal::generate::{generate_ba, generate_er, generate_sbm, kronecker_product};
use hitlocal::mixing::local_distance_curve;
use hitlocal::{stationary, Graph, WalkEnsemble};

/// Connected graph: a random tree on `n` nodes plus extra edges. With
/// `triangle`, nodes 0, 1, 2 form a triangle so the walk is aperiodic.
fn connected(max_n: usize, triangle: bool) -> impl Strategy<Value = Graph> {
    (3..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            let extra = prop::collection::vec((0..n, 0..n), 0..2 * n);
            (Just(n), parents, extra)
        })
        .prop_map(move |(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> =
                parents.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect();
            edges.extend(extra);
            if triangle {
                edges.extend([(0, 1), (1, 2), (0, 2)]);
            }
            Graph::from_edges(n, edges).unwrap()
        })
}

fn any_graph() -> impl Strategy<Value = Graph> {
    (1usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..60).prop_map(move |e| Graph::from_edges(n, e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn handshake(g in any_graph()) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.m());
        prop_assert_eq!(g.edges().count(), g.m());
    }

    #[test]
    fn edge_list_round_trip(g in any_graph()) {
        // Edgeless input is rejected on read.
        prop_assume!(g.m() > 0);
        let back = Graph::from_edge_list(&g.to_edge_list_string(), false).unwrap().graph;
        prop_assert_eq!(back, g);
    }

    #[test]
    fn detailed_balance(g in connected(25, false)) {
        let pi = stationary(&g).unwrap();
        prop_assert!((pi.pi.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (a, b) in g.edges() {
            let fwd = pi.get(a) / g.degree(a) as f64;
            let bwd = pi.get(b) / g.degree(b) as f64;
            prop_assert!((fwd - bwd).abs() < 1e-12);
        }
    }

    #[test]
    fn kronecker_degree_rule(g in connected(8, false), h in connected(8, true)) {
        let k = kronecker_product(&g, &h).unwrap();
        for a in 0..g.n() {
            for b in 0..h.n() {
                prop_assert_eq!(k.degree(a * h.n() + b), g.degree(a) * h.degree(b));
            }
        }
    }

    #[test]
    fn generators_are_reproducible(seed in any::<u64>(), n in 5usize..80) {
        prop_assert_eq!(generate_er(n, 0.1, seed).unwrap(), generate_er(n, 0.1, seed).unwrap());
        prop_assert_eq!(generate_ba(n, 2, seed).unwrap(), generate_ba(n, 2, seed).unwrap());
        let blocks = [n / 2, n - n / 2];
        prop_assert_eq!(
            generate_sbm(&blocks, 0.3, 0.05, seed).unwrap(),
            generate_sbm(&blocks, 0.3, 0.05, seed).unwrap()
        );
    }

    #[test]
    fn harmonic_residual(g in connected(30, false), t in any::<prop::sample::Index>()) {
        let target = t.index(g.n());
        let h = exact_hitting_to(&g, target, DEFAULT_TOL).unwrap().h;
        prop_assert_eq!(h[target], 0.0);
        for u in (0..g.n()).filter(|&u| u != target) {
            let avg = g.neighbors(u).iter().map(|&w| h[w as usize]).sum::<f64>() / g.degree(u) as f64;
            prop_assert!((h[u] - 1.0 - avg).abs() <= 1e-8 * h[u].max(1.0));
        }
    }

    #[test]
    fn commute_time_identity(g in connected(20, false)) {
        let hm = hitting_matrix(&g, DEFAULT_TOL).unwrap();
        let two_m = 2.0 * g.m() as f64;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let r = effective_resistance_pinv(&g, u, v).unwrap();
                let commute = hm[(u, v)] + hm[(v, u)];
                prop_assert!((two_m * r - commute).abs() <= 1e-8 * commute);
            }
        }
    }

    #[test]
    fn push_keeps_mass(g in connected(25, true), beta in 0.0f64..0.9) {
        let g = g.with_laziness(beta).unwrap();
        let mut x = vec![0.0; g.n()];
        x[0] = 1.0;
        for _ in 0..10 {
            x = push_distribution(&g, &x);
            prop_assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(x.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn local_distance_is_bounded(g in connected(20, true), u in any::<prop::sample::Index>()) {
        let u = u.index(g.n());
        for d in local_distance_curve(&g, u, 0, 30).unwrap() {
            prop_assert!((0.0..=2.0 + 1e-12).contains(&d));
        }
    }

    #[test]
    fn meeting_tail_is_non_increasing(g in connected(10, true), u in any::<prop::sample::Index>()) {
        let u = u.index(g.n());
        let tail = meeting_tail_curve(&g, u, g.n() - 1, 60).unwrap();
        prop_assert!(tail.iter().all(|&p| (-1e-12..=1.0 + 1e-12).contains(&p)), "{:?}", &tail[..4]);
        for w in tail.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-15);
        }
    }

    #[test]
    fn occupancy_is_conserved(g in connected(20, true), seed in any::<u64>(), cut in 0usize..20) {
        let mut ens = WalkEnsemble::new(&g, 0, 40, seed, 0).unwrap();
        let mut alive = ens.alive_count();
        for t in 0..30 {
            ens.advance(&g);
            if t % 3 == 0 {
                ens.remove_where(|node| node == cut % g.n());
            }
            prop_assert!(ens.alive_count() <= alive);
            alive = ens.alive_count();
            prop_assert!(ens.positions().all(|(id, node)| id < 40 && node < g.n()));
        }
    }

    #[test]
    fn eliminations_are_paired(g in connected(15, true), seed in any::<u64>()) {
        let params = EstimatorParams::practical(30, 100_000, seed);
        let (_, trace) = meeting_time_trace(&g, 0, g.n() - 1, &params).unwrap();
        for s in &trace {
            prop_assert_eq!(s.eliminated_u, s.eliminated_v);
            prop_assert_eq!(s.alive_u, s.alive_v);
        }
    }

    #[test]
    fn csv_round_trip(
        est in prop::option::of(-1e12f64..1e12),
        exact in prop::option::of(0.0f64..1e9),
        steps in any::<u64>(),
        seed in any::<u64>(),
        name in "[a-z,\" ]{0,12}",
        failed in any::<bool>(),
    ) {
        let row = BenchRecord {
            graph: name,
            n: 7,
            m: 9,
            u: 1,
            v: 2,
            sampler: "uniform".into(),
            algorithm: Algorithm::Cutoff,
            repeat: 3,
            walks: 100,
            estimate: est,
            exact,
            reference: if exact.is_some() { Reference::Exact } else { Reference::None },
            rel_error: None,
            abs_error: None,
            steps,
            wall_time: None,
            seed,
            failed,
            retries: 0,
        }
        .with_errors();
        prop_assert_eq!(row.rel_error.is_some(), row.estimate.is_some() && row.exact.is_some());
        let mut buf = Vec::new();
        write_records(&mut buf, std::slice::from_ref(&row)).unwrap();
        let back: Vec<BenchRecord> = read_records(buf.as_slice()).unwrap();
        prop_assert_eq!(back, vec![row]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn estimates_do_not_depend_on_thread_count(g in connected(30, true), seed in any::<u64>()) {
        let params = EstimatorParams::practical(3000, 1_000_000, seed);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| meeting_time_estimate(&g, 0, g.n() - 1, &params).unwrap().value)
        };
        prop_assert_eq!(run(1).map(f64::to_bits), run(3).map(f64::to_bits));
    }
}
