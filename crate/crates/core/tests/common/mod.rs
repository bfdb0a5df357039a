#![allow(dead_code)]

use hybridnet::generators::{generate_n, generate_n1, RuleConfig};
use hybridnet::graph::LabeledGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn complete(n: usize) -> LabeledGraph {
    let pairs: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    LabeledGraph::from_edge_pairs(n, &pairs).unwrap()
}

pub fn cycle(n: usize) -> LabeledGraph {
    let pairs: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    LabeledGraph::from_edge_pairs(n, &pairs).unwrap()
}

pub fn n(t: u32) -> LabeledGraph {
    generate_n(t, &RuleConfig::default()).unwrap().0
}

pub fn n1(t: u32) -> LabeledGraph {
    generate_n1(t).unwrap()
}

/// Random tree on a shuffled vertex order plus extra chords.
pub fn random_connected(seed: u64, max_n: usize) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 1..n {
        let a = order[i];
        let b = order[rng.gen_range(0..i)];
        pairs.push((a.min(b), a.max(b)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !pairs.contains(&(a, b)) && rng.gen_bool(0.3) {
                pairs.push((a, b));
            }
        }
    }
    LabeledGraph::from_edge_pairs(n, &pairs).unwrap()
}

pub fn floyd_warshall(g: &LabeledGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in g.edges() {
        d[e.u][e.v] = 1;
        d[e.v][e.u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Generated graphs with at most 30 vertices.
pub fn small_corpus() -> Vec<(String, LabeledGraph)> {
    let mut out = Vec::new();
    for t in 0..=2 {
        out.push((format!("N({t})"), n(t)));
    }
    for t in 1..=3 {
        out.push((format!("N1({t})"), n1(t)));
    }
    out
}
