//! Property tests over seeded random trees: the linear-time routes must
//! match their brute-force counterparts on arbitrary inputs.

use proptest::prelude::*;

use treedelta::query::{closest, Metric};
use treedelta::{
    build_index, cycle_partition, dprime_from_weights, edge_splits, generate, parse_rational,
    sweep_all, tree_path, weight_vectors, wiener_bfs, wiener_from_splits, Apsp, Tree, TreeKind,
    VertexId,
};

fn random_tree(n: u64, seed: u64) -> Tree {
    generate(TreeKind::Random, n, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_sides_partition_the_tree(n in 2u64..80, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        let splits = edge_splits(&tree);
        for e in 0..tree.edge_count() as u32 {
            let (a, b) = splits.sides(e);
            prop_assert!(a >= 1 && b >= 1);
            prop_assert_eq!(a + b, n as i64);
        }
    }

    #[test]
    fn wiener_routes_match(n in 2u64..120, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        prop_assert_eq!(wiener_from_splits(&edge_splits(&tree)), wiener_bfs(&tree));
    }

    #[test]
    fn wiener_respects_extremal_bounds(n in 2u64..60, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        let w = wiener_bfs(&tree);
        prop_assert!(w >= treedelta::wiener_lower_bound(n));
        prop_assert!(w <= treedelta::wiener_upper_bound(n));
    }

    #[test]
    fn path_endpoints_and_bfs_distance_agree(n in 2u64..60, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        let x = (seed % n) as VertexId;
        let y = ((seed / 7 + 1) % n) as VertexId;
        prop_assume!(x != y);
        let path = tree_path(&tree, x, y).unwrap();
        prop_assert_eq!(path[0], x);
        prop_assert_eq!(*path.last().unwrap(), y);
        prop_assert_eq!(path.len() as u32 - 1, tree.distance(x, y));
    }

    #[test]
    fn dprime_routes_agree_on_random_pairs(n in 4u64..40, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        let splits = edge_splits(&tree);
        let apsp = Apsp::new(&tree);
        let mut found = None;
        'outer: for x in 0..n as VertexId {
            for y in x + 1..n as VertexId {
                if !tree.has_edge(x, y) && (x as u64 + y as u64 + seed) % 3 == 0 {
                    found = Some((x, y));
                    break 'outer;
                }
            }
        }
        prop_assume!(found.is_some());
        let (x, y) = found.unwrap();
        let part = cycle_partition(&tree, x, y).unwrap();
        let w = weight_vectors(&tree, &splits, &part);
        let direct = dprime_from_weights(&w);
        prop_assert_eq!(direct, apsp.dprime(x, y));
        prop_assert_eq!(direct, treedelta::dprime_pairwise(&tree, &splits, x, y).unwrap());
        prop_assert!(direct >= 1);
        let conserved: i64 = w.vx.iter().sum::<i64>()
            + w.vy.iter().sum::<i64>()
            + w.middle_weight.unwrap_or(0);
        prop_assert_eq!(conserved, n as i64);
    }

    #[test]
    fn sweep_emits_each_pair_once(n in 3u64..50, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        let splits = edge_splits(&tree);
        let mut records = Vec::new();
        sweep_all(&tree, &splits, |r| records.push(r));
        prop_assert_eq!(records.len() as u64, tree.inset_edge_count());
        records.sort_unstable();
        for w in records.windows(2) {
            prop_assert!((w[0].x, w[0].y) < (w[1].x, w[1].y));
        }
    }

    #[test]
    fn closest_equals_linear_scan(
        n in 4u64..40,
        seed in 0u64..1_000_000,
        numer in -50i64..5000,
        denom in 1i64..12,
        adprime_metric in any::<bool>(),
    ) {
        let tree = random_tree(n, seed);
        let splits = edge_splits(&tree);
        let mut records = Vec::new();
        sweep_all(&tree, &splits, |r| records.push(r));
        let index = build_index(records, n).unwrap();
        let metric = if adprime_metric { Metric::Adprime } else { Metric::Dprime };
        let target = parse_rational(&format!("{numer}/{denom}")).unwrap();
        let got = closest(&index, target, metric).unwrap();
        use num_traits::Signed;
        let best = index
            .records()
            .iter()
            .map(|r| (index.metric_value(r, metric) - target).abs())
            .min()
            .unwrap();
        prop_assert_eq!(got.deviation.clone(), best.clone());
        let mut scan: Vec<_> = index
            .records()
            .iter()
            .filter(|r| (index.metric_value(r, metric) - target).abs() == best)
            .copied()
            .collect();
        scan.sort_unstable();
        prop_assert_eq!(got.records, scan);
    }

    #[test]
    fn edge_list_text_round_trips(n in 2u64..50, seed in 0u64..1_000_000) {
        let tree = random_tree(n, seed);
        let text = tree.to_edge_list();
        let back: Tree = text.parse().unwrap();
        prop_assert_eq!(back.edges(), tree.edges());
        prop_assert_eq!(back.to_edge_list(), text);
    }
}
