use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SpanningError;
use crate::exact::ExactCount;
use crate::graph::LabeledGraph;

pub const DEFAULT_DET_BOUND: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningCount {
    pub count: ExactCount,
    /// The Laplacian row and column removed.
    pub deleted: usize,
    /// False for a disconnected graph, whose count is 0.
    pub connected: bool,
}

/// The Laplacian with row and column `deleted` removed.
pub fn laplacian_minor(graph: &LabeledGraph, deleted: usize) -> Vec<Vec<BigInt>> {
    let n = graph.vertex_count();
    let idx = |v: usize| if v < deleted { Some(v) } else if v > deleted { Some(v - 1) } else { None };
    let mut m = vec![vec![BigInt::zero(); n.saturating_sub(1)]; n.saturating_sub(1)];
    for v in 0..n {
        if let Some(i) = idx(v) {
            m[i][i] = BigInt::from(graph.degree(v));
        }
    }
    for e in graph.edges() {
        if let (Some(i), Some(j)) = (idx(e.u), idx(e.v)) {
            m[i][j] -= 1;
            m[j][i] -= 1;
        }
    }
    m
}

/// Fraction-free (Bareiss) determinant; every division is exact.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Matrix-tree count using any deleted row/column.
pub fn count_spanning_trees_with(
    graph: &LabeledGraph,
    deleted: usize,
    bound: usize,
) -> Result<SpanningCount, SpanningError> {
    let n = graph.vertex_count();
    if n > bound {
        return Err(SpanningError::TooLarge(n, bound));
    }
    if deleted >= n {
        return Err(SpanningError::BadMinor(deleted));
    }
    if !graph.is_connected() {
        return Ok(SpanningCount {
            count: ExactCount::zero(),
            deleted,
            connected: false,
        });
    }
    let det = bareiss_det(laplacian_minor(graph, deleted));
    debug_assert!(!det.is_negative());
    Ok(SpanningCount {
        count: ExactCount(det.magnitude().clone()),
        deleted,
        connected: true,
    })
}

/// Matrix-tree count deleting the last vertex, under the default size bound.
pub fn count_spanning_trees(graph: &LabeledGraph) -> Result<SpanningCount, SpanningError> {
    let n = graph.vertex_count();
    count_spanning_trees_with(graph, n.saturating_sub(1), DEFAULT_DET_BOUND)
}
