mod common;

use std::collections::BTreeMap;

use common::{complete, cycle, floyd_warshall, n, n1, random_connected, small_corpus};
use hybridnet::closed_forms::{fibonacci, iterate_mobius, solve_mobius, FibSpec, MobiusRecurrence};
use hybridnet::exact::rational_to_f64;
use hybridnet::metrics::bfs_distances;
use hybridnet::spanning::{
    count_mls_trees, count_spanning_trees, count_spanning_trees_with, enumerate_spanning_trees, is_spanning_tree,
    max_leaf_spanning_tree, tree_leaf_count, DEFAULT_DET_BOUND,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 10_000_000;

#[test]
fn bfs_matches_floyd_warshall() {
    for (name, g) in small_corpus() {
        let fw = floyd_warshall(&g);
        for (s, row) in fw.iter().enumerate() {
            assert_eq!(&bfs_distances(&g, s), row, "{name} source {s}");
        }
    }
}

#[test]
fn determinant_matches_enumeration_on_named_graphs() {
    let named = [
        ("K3", complete(3), 3u64),
        ("C4", cycle(4), 4),
        ("K4", complete(4), 16),
        ("N(1)", n(1), 30),
        ("N1(2)", n1(2), 54),
    ];
    for (name, g, expected) in named {
        let det = count_spanning_trees(&g).unwrap().count;
        let en = enumerate_spanning_trees(&g, CAP).unwrap();
        assert!(en.complete);
        assert_eq!(det, expected.into(), "{name}");
        assert_eq!(en.count, expected, "{name}");
    }
}

#[test]
fn k4_leaf_histogram() {
    let en = enumerate_spanning_trees(&complete(4), CAP).unwrap();
    let want: BTreeMap<usize, u64> = [(2, 12), (3, 4)].into_iter().collect();
    assert_eq!(en.leaf_histogram, want);
}

#[test]
fn determinant_matches_enumeration_on_random_graphs() {
    for seed in 0..20 {
        let g = random_connected(seed, 8);
        let det = count_spanning_trees(&g).unwrap().count;
        let en = enumerate_spanning_trees(&g, CAP).unwrap();
        assert_eq!(det, en.count.into(), "seed {seed}");
    }
}

#[test]
fn enumeration_paths_agree_above_the_subset_threshold() {
    // N(2) has 40 edges, so it goes through the branching enumerator
    let g = n(2);
    let det = count_spanning_trees(&g).unwrap().count;
    assert_eq!(det, 2_156_544u64.into());
    let en = enumerate_spanning_trees(&g, CAP).unwrap();
    assert_eq!(en.count, 2_156_544);
}

#[test]
fn minor_choice_is_irrelevant() {
    for seed in 100..110 {
        let g = random_connected(seed, 8);
        let counts: Vec<_> = (0..g.vertex_count())
            .map(|d| count_spanning_trees_with(&g, d, DEFAULT_DET_BOUND).unwrap().count)
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "seed {seed}: {counts:?}");
    }
}

#[test]
fn mlst_agrees_with_enumeration() {
    let mut graphs = vec![n(1), n1(2), complete(4), cycle(5)];
    graphs.extend((200..215).map(|s| random_connected(s, 7)));
    for g in &graphs {
        let r = max_leaf_spanning_tree(g, 1_000_000).unwrap();
        let en = enumerate_spanning_trees(g, CAP).unwrap();
        let (best, count) = en.max_leaves().unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.max_leaves, best);
        assert!(is_spanning_tree(g, &r.witness));
        assert_eq!(tree_leaf_count(g, &r.witness), best);
        assert_eq!(count_mls_trees(g, CAP).unwrap(), count.into());
    }
}

fn mobius_instances(count: usize) -> Vec<(MobiusRecurrence, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    while out.len() < count {
        let mut v = || rng.gen_range(-9i64..=9);
        let rec = MobiusRecurrence::from_ints(v(), v(), v(), v(), v());
        let n = rng.gen_range(1..=30);
        if rec.validate().is_ok() && iterate_mobius(&rec, n).is_ok() && solve_mobius(&rec, n).is_ok() {
            out.push((rec, n));
        }
    }
    out
}

#[test]
fn mobius_two_hundred_instances() {
    for (rec, n) in mobius_instances(200) {
        let want = rational_to_f64(iterate_mobius(&rec, n).unwrap().last().unwrap());
        let got = solve_mobius(&rec, n).unwrap().value.as_f64();
        assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{rec:?} n={n}: {got} vs {want}");
    }
}

#[test]
fn cassini_identity() {
    let f = fibonacci(&FibSpec::new(&[1, 1]), 32).unwrap();
    for i in 1..=30 {
        let lhs = &f[i - 1] * &f[i + 1] - &f[i] * &f[i];
        let sign = if i % 2 == 0 { -1 } else { 1 };
        assert_eq!(lhs, BigInt::from(sign), "i={i}");
    }
}
