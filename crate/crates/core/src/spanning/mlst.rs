use serde::{Deserialize, Serialize};

use super::{connected_with, count_mls_trees, tree_leaf_count, Dsu};
use crate::error::SpanningError;
use crate::exact::ExactCount;
use crate::graph::{EdgeId, LabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlsResult {
    pub max_leaves: usize,
    /// Edge ids of a tree attaining `max_leaves`, ascending.
    pub witness: Vec<EdgeId>,
    /// Number of maximum-leaf trees, when computed.
    pub count: Option<ExactCount>,
    /// True iff the search finished within the budget.
    pub exhaustive: bool,
    /// Proven upper bound on the optimum; equals `max_leaves` when exhaustive.
    pub upper_bound: usize,
    pub expanded: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Open,
    In,
    Out,
}

#[derive(Clone)]
struct Node {
    idx: usize,
    choice: Vec<Choice>,
}

/// Greedy start: take every edge of a max-degree vertex, then keep adding
/// the frontier vertex that brings in the most new vertices.
fn greedy_tree(graph: &LabeledGraph) -> Vec<EdgeId> {
    let n = graph.vertex_count();
    let mut in_tree = vec![false; n];
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    let root = (0..n).max_by_key(|&v| (graph.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    in_tree[root] = true;
    let mut members = vec![root];
    let mut expanded = vec![false; n];
    loop {
        let best = members
            .iter()
            .filter(|&&v| !expanded[v])
            .map(|&v| (graph.neighbors(v).filter(|&w| !in_tree[w]).count(), v))
            .filter(|&(gain, _)| gain > 0)
            .max_by_key(|&(gain, v)| (gain, std::cmp::Reverse(v)));
        let Some((_, v)) = best else { break };
        expanded[v] = true;
        for &(w, e) in graph.incident(v) {
            if !in_tree[w] {
                in_tree[w] = true;
                tree.push(e);
                members.push(w);
            }
        }
    }
    tree.sort_unstable();
    tree
}

/// Articulation points of the subgraph of kept edges (iterative Tarjan).
fn articulation_points(graph: &LabeledGraph, keep: &[Choice]) -> Vec<bool> {
    let n = graph.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut cut = vec![false; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent edge, next incident index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, pe) = (top.0, top.1);
            let inc = graph.incident(v);
            if top.2 < inc.len() {
                let (w, e) = inc[top.2];
                top.2 += 1;
                if e == pe || keep[e] == Choice::Out {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        cut[p] = true;
                    }
                }
            }
        }
        cut[root] = root_children > 1;
    }
    cut
}

/// Leaves achievable below this node: every vertex minus those already
/// forced internal (two chosen edges, or a cut vertex of what remains).
fn upper_bound(graph: &LabeledGraph, choice: &[Choice]) -> usize {
    let n = graph.vertex_count();
    if n <= 2 {
        return n;
    }
    let mut deg = vec![0usize; n];
    for (e, c) in choice.iter().enumerate() {
        if *c == Choice::In {
            let (u, v) = graph.edges()[e].endpoints();
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let cut = articulation_points(graph, choice);
    n - (0..n).filter(|&v| deg[v] >= 2 || cut[v]).count()
}

/// Branch and bound over edge inclusion in ascending id order, include
/// branch first. `budget` caps the number of expanded nodes.
pub fn max_leaf_spanning_tree(graph: &LabeledGraph, budget: u64) -> Result<MlsResult, SpanningError> {
    if !graph.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let mut best = greedy_tree(graph);
    let mut best_leaves = tree_leaf_count(graph, &best);
    let mut stack = vec![Node {
        idx: 0,
        choice: vec![Choice::Open; m],
    }];
    let mut expanded = 0u64;
    let mut open_bound = 0usize;
    let mut hit_budget = false;

    while let Some(mut node) = stack.pop() {
        if expanded >= budget {
            hit_budget = true;
            open_bound = open_bound.max(upper_bound(graph, &node.choice));
            for rest in &stack {
                open_bound = open_bound.max(upper_bound(graph, &rest.choice));
            }
            stack.clear();
            break;
        }
        expanded += 1;

        let mut dsu = Dsu::new(n);
        let mut chosen = 0;
        for (e, c) in node.choice.iter().enumerate() {
            if *c == Choice::In {
                let r = &graph.edges()[e];
                dsu.union(r.u, r.v);
                chosen += 1;
            }
        }
        // edges closing a cycle are out
        while node.idx < m {
            let r = &graph.edges()[node.idx];
            if dsu.find(r.u) != dsu.find(r.v) {
                break;
            }
            node.choice[node.idx] = Choice::Out;
            node.idx += 1;
        }
        if chosen + 1 == n {
            let tree: Vec<EdgeId> = (0..m).filter(|&e| node.choice[e] == Choice::In).collect();
            let leaves = tree_leaf_count(graph, &tree);
            if leaves > best_leaves {
                best_leaves = leaves;
                best = tree;
            }
            continue;
        }
        if node.idx == m || upper_bound(graph, &node.choice) <= best_leaves {
            continue;
        }
        let i = node.idx;
        let mut out = node.choice.clone();
        out[i] = Choice::Out;
        if connected_with(graph, |e| out[e] != Choice::Out) {
            stack.push(Node { idx: i + 1, choice: out });
        }
        node.choice[i] = Choice::In;
        node.idx = i + 1;
        stack.push(node);
    }

    let exhaustive = !hit_budget || open_bound <= best_leaves;
    Ok(MlsResult {
        max_leaves: best_leaves,
        witness: best,
        count: None,
        exhaustive,
        upper_bound: if exhaustive { best_leaves } else { open_bound },
        expanded,
    })
}

/// Branch and bound followed by exhaustive counting of the optimal trees.
pub fn max_leaf_with_count(graph: &LabeledGraph, budget: u64, cap: u64) -> Result<MlsResult, SpanningError> {
    let mut r = max_leaf_spanning_tree(graph, budget)?;
    r.count = count_mls_trees(graph, cap).ok();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SeedKind;
    use crate::spanning::is_spanning_tree;

    #[test]
    fn star_and_cycle() {
        let star = LabeledGraph::from_edge_pairs(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let r = max_leaf_spanning_tree(&star, 1000).unwrap();
        assert_eq!(r.max_leaves, 5);
        assert_eq!(r.witness, vec![0, 1, 2, 3, 4]);
        assert!(r.exhaustive);
        assert_eq!(count_mls_trees(&star, 10).unwrap(), 1u64.into());
        let c4 = LabeledGraph::new_seed(SeedKind::Rectangle);
        assert_eq!(max_leaf_spanning_tree(&c4, 1000).unwrap().max_leaves, 2);
    }

    #[test]
    fn k4_stars() {
        let pairs: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let k4 = LabeledGraph::from_edge_pairs(4, &pairs).unwrap();
        let r = max_leaf_with_count(&k4, 1000, 100).unwrap();
        assert_eq!(r.max_leaves, 3);
        assert_eq!(r.count, Some(4u64.into()));
        assert!(is_spanning_tree(&k4, &r.witness));
    }

    #[test]
    fn articulation_points_of_a_path() {
        let g = LabeledGraph::from_edge_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let cut = articulation_points(&g, &[Choice::Open; 3]);
        assert_eq!(cut, vec![false, true, true, false]);
    }

    #[test]
    fn budget_exhaustion_reports_a_bound() {
        let pairs: Vec<_> = (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b))).collect();
        let k7 = LabeledGraph::from_edge_pairs(7, &pairs).unwrap();
        // greedy already finds the star, so even a tiny budget is optimal
        let r = max_leaf_spanning_tree(&k7, 1).unwrap();
        assert_eq!(r.max_leaves, 6);
        assert!(r.upper_bound >= r.max_leaves);
    }
}
