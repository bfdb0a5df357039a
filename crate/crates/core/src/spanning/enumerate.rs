use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{connected_with, tree_leaf_count, Dsu};
use crate::error::SpanningError;
use crate::exact::ExactCount;
use crate::graph::{EdgeId, LabeledGraph};

/// Up to this many edges, trees are found by filtering `(n-1)`-subsets.
pub const SUBSET_FILTER_MAX_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    /// Trees seen; equals the total when `complete`.
    pub count: u64,
    pub complete: bool,
    /// Leaf count -> number of trees.
    pub leaf_histogram: BTreeMap<usize, u64>,
}

impl Enumeration {
    pub fn max_leaves(&self) -> Option<(usize, u64)> {
        self.leaf_histogram.iter().next_back().map(|(&k, &v)| (k, v))
    }
}

struct Collector {
    cap: u64,
    count: u64,
    histogram: BTreeMap<usize, u64>,
}

impl Collector {
    /// False once the cap is reached.
    fn record(&mut self, graph: &LabeledGraph, tree: &[EdgeId]) -> bool {
        if self.count >= self.cap {
            return false;
        }
        self.count += 1;
        *self.histogram.entry(tree_leaf_count(graph, tree)).or_insert(0) += 1;
        true
    }
}

fn by_subsets(graph: &LabeledGraph, c: &mut Collector) -> bool {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let k = n - 1;
    let mut tree = Vec::with_capacity(k);
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut dsu = Dsu::new(n);
        tree.clear();
        let acyclic = (0..m).filter(|e| mask >> e & 1 == 1).all(|e| {
            tree.push(e);
            let r = &graph.edges()[e];
            dsu.union(r.u, r.v)
        });
        if acyclic && !c.record(graph, &tree) {
            return false;
        }
    }
    true
}

/// Include/exclude search over edges in id order. A branch is only opened if
/// it can still reach a spanning tree, so every leaf of the search is a tree.
fn by_branching(graph: &LabeledGraph, c: &mut Collector) -> bool {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let mut excluded = vec![false; m];
    let mut tree = Vec::with_capacity(n - 1);
    let mut dsu = Dsu::new(n);

    fn go(
        graph: &LabeledGraph,
        idx: usize,
        excluded: &mut Vec<bool>,
        tree: &mut Vec<EdgeId>,
        dsu: &mut Dsu,
        c: &mut Collector,
    ) -> bool {
        if tree.len() + 1 == graph.vertex_count() {
            return c.record(graph, tree);
        }
        if idx == graph.edge_count() {
            return true;
        }
        let r = &graph.edges()[idx];
        if dsu.union(r.u, r.v) {
            tree.push(idx);
            let ok = go(graph, idx + 1, excluded, tree, dsu, c);
            tree.pop();
            dsu.rollback();
            if !ok {
                return false;
            }
            excluded[idx] = true;
            if connected_with(graph, |e| !excluded[e]) {
                let ok = go(graph, idx + 1, excluded, tree, dsu, c);
                excluded[idx] = false;
                return ok;
            }
            excluded[idx] = false;
            true
        } else {
            // would close a cycle with the chosen edges
            excluded[idx] = true;
            let ok = go(graph, idx + 1, excluded, tree, dsu, c);
            excluded[idx] = false;
            ok
        }
    }

    go(graph, 0, &mut excluded, &mut tree, &mut dsu, c)
}

/// Lists every spanning tree up to `cap`, recording leaf counts.
pub fn enumerate_spanning_trees(graph: &LabeledGraph, cap: u64) -> Result<Enumeration, SpanningError> {
    if !graph.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let mut c = Collector {
        cap,
        count: 0,
        histogram: BTreeMap::new(),
    };
    let complete = if graph.vertex_count() == 1 {
        c.histogram.insert(0, 1);
        c.count = 1;
        true
    } else if graph.edge_count() <= SUBSET_FILTER_MAX_EDGES {
        by_subsets(graph, &mut c)
    } else {
        by_branching(graph, &mut c)
    };
    Ok(Enumeration {
        count: c.count,
        complete,
        leaf_histogram: c.histogram,
    })
}

/// Number of spanning trees attaining the maximum leaf count.
pub fn count_mls_trees(graph: &LabeledGraph, cap: u64) -> Result<ExactCount, SpanningError> {
    let e = enumerate_spanning_trees(graph, cap)?;
    if !e.complete {
        return Err(SpanningError::CapExceeded(cap));
    }
    Ok(ExactCount::from(e.max_leaves().map_or(0, |(_, v)| v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SeedKind;

    fn complete(n: usize) -> LabeledGraph {
        let pairs: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        LabeledGraph::from_edge_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn cycle_and_k4() {
        let c4 = LabeledGraph::new_seed(SeedKind::Rectangle);
        let e = enumerate_spanning_trees(&c4, 100).unwrap();
        assert_eq!((e.count, e.complete), (4, true));
        assert_eq!(e.leaf_histogram, [(2, 4)].into_iter().collect());
        let e = enumerate_spanning_trees(&complete(4), 100).unwrap();
        assert_eq!(e.count, 16);
        assert_eq!(e.leaf_histogram, [(2, 12), (3, 4)].into_iter().collect());
        assert_eq!(count_mls_trees(&complete(4), 100).unwrap(), 4u64.into());
        assert_eq!(count_mls_trees(&c4, 100).unwrap(), 4u64.into());
    }

    #[test]
    fn branching_agrees_with_subsets() {
        // K7 has 21 edges and 7^5 trees
        let e = enumerate_spanning_trees(&complete(7), 1 << 20).unwrap();
        assert_eq!(e.count, 16807);
        let mut c = Collector {
            cap: u64::MAX,
            count: 0,
            histogram: BTreeMap::new(),
        };
        let k6 = complete(6);
        by_branching(&k6, &mut c);
        let sub = enumerate_spanning_trees(&k6, u64::MAX).unwrap();
        assert_eq!(c.count, sub.count);
        assert_eq!(c.histogram, sub.leaf_histogram);
    }

    #[test]
    fn cap_is_soft() {
        let e = enumerate_spanning_trees(&complete(5), 10).unwrap();
        assert_eq!((e.count, e.complete), (10, false));
        assert_eq!(count_mls_trees(&complete(5), 10), Err(SpanningError::CapExceeded(10)));
        let disc = LabeledGraph::from_edge_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(enumerate_spanning_trees(&disc, 10), Err(SpanningError::Disconnected));
    }
}
