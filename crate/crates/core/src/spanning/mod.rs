//! Spanning-tree counting, enumeration and maximum-leaf search.

mod enumerate;
mod kirchhoff;
mod mlst;

pub use enumerate::{count_mls_trees, enumerate_spanning_trees, Enumeration, SUBSET_FILTER_MAX_EDGES};
pub use kirchhoff::{count_spanning_trees, count_spanning_trees_with, laplacian_minor, SpanningCount, DEFAULT_DET_BOUND};
pub use mlst::{max_leaf_spanning_tree, max_leaf_with_count, MlsResult};

use crate::graph::{EdgeId, LabeledGraph};

/// Union-find with union by size and no path compression, so unions can be
/// rolled back in stack order.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Joins the sets of `a` and `b`; false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((ra, rb));
        true
    }

    pub(crate) fn rollback(&mut self) {
        if let Some((ra, rb)) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

/// Number of degree-1 vertices in the edge set.
pub fn tree_leaf_count(graph: &LabeledGraph, edges: &[EdgeId]) -> usize {
    let mut deg = vec![0usize; graph.vertex_count()];
    for &e in edges {
        let (u, v) = graph.edges()[e].endpoints();
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().filter(|&&d| d == 1).count()
}

/// True when `edges` is a spanning tree of `graph`.
pub fn is_spanning_tree(graph: &LabeledGraph, edges: &[EdgeId]) -> bool {
    let n = graph.vertex_count();
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    let mut dsu = Dsu::new(n);
    edges.iter().all(|&e| {
        graph
            .edge(e)
            .map(|r| dsu.union(r.u, r.v))
            .unwrap_or(false)
    })
}

/// Connectivity of the subgraph that keeps only edges with `keep[e]`.
pub(crate) fn connected_with(graph: &LabeledGraph, keep: impl Fn(EdgeId) -> bool) -> bool {
    let n = graph.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &(y, e) in graph.incident(x) {
            if !seen[y] && keep(e) {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}
