//! Labeled simple graphs and the growth operations that build every model in
//! the crate.
//!
//! A [`LabeledGraph`] is append-only. Vertices and edges carry the step they
//! were born in and the operation that created them; edges additionally carry
//! an orientation label and role flags. Four growth phases are provided:
//!
//! * triangle: a new vertex joined to both endpoints of each target edge;
//! * star: a new pendant vertex hung on each endpoint of each target edge;
//! * rectangle: a parallel copy of each target edge, closing a 4-cycle;
//! * hub: a new vertex joined to all four corners of each target rectangle.
//!
//! Every phase reads its targets from a frozen list, so growth inside one call
//! never cascades.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type RectId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Seed,
    Triangle,
    Star,
    Rectangle,
    Hub,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Seed => "seed",
            Origin::Triangle => "triangle",
            Origin::Star => "star",
            Origin::Rectangle => "rectangle",
            Origin::Hub => "hub",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Origin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "seed" => Origin::Seed,
            "triangle" => Origin::Triangle,
            "star" => Origin::Star,
            "rectangle" => Origin::Rectangle,
            "hub" => Origin::Hub,
            other => return Err(format!("unknown origin `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Vertical,
    Aclinic,
    Unoriented,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Vertical => "vertical",
            Orientation::Aclinic => "aclinic",
            Orientation::Unoriented => "unoriented",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "vertical" => Orientation::Vertical,
            "aclinic" => Orientation::Aclinic,
            "unoriented" => Orientation::Unoriented,
            other => return Err(format!("unknown orientation `{other}`")),
        })
    }
}

/// Role flags of an edge. Flags are only ever added.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Roles {
    pub triangle_member: bool,
    pub rectangle_side: bool,
    pub pendant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRec {
    pub id: VertexId,
    pub birth_step: u32,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRec {
    pub id: EdgeId,
    /// Smaller endpoint.
    pub u: VertexId,
    /// Larger endpoint.
    pub v: VertexId,
    pub orientation: Orientation,
    pub birth_step: u32,
    pub origin: Origin,
    #[serde(default)]
    pub roles: Roles,
}

impl EdgeRec {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A registered 4-cycle. Corners are in cyclic order; `vertical[0]` joins
/// `corners[0]`-`corners[1]` and `vertical[1]` joins `corners[2]`-`corners[3]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub id: RectId,
    pub corners: [VertexId; 4],
    pub vertical: [EdgeId; 2],
    pub aclinic: [EdgeId; 2],
    pub birth_step: u32,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedKind {
    Rectangle,
    SingleEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Triangle,
    Star,
    Rectangle,
    Hub,
}

impl Phase {
    fn name(self) -> &'static str {
        match self {
            Phase::Triangle => "triangle",
            Phase::Star => "star",
            Phase::Rectangle => "rectangle",
            Phase::Hub => "hub",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Targets {
    Edges(Vec<EdgeId>),
    Rectangles(Vec<RectId>),
}

/// What one growth call added.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSummary {
    pub new_vertices: usize,
    pub new_edges: usize,
    pub new_triangles: usize,
    pub new_rectangles: usize,
}

/// Result of [`LabeledGraph::validate`]. Violations are collected, never raised.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub simple: bool,
    pub connected: bool,
    pub degree_sum_ok: bool,
    pub adjacency_consistent: bool,
    pub ids_ordered: bool,
    pub degree_sum: usize,
    pub violations: Vec<String>,
}

impl InvariantReport {
    pub fn is_ok(&self) -> bool {
        self.simple
            && self.connected
            && self.degree_sum_ok
            && self.adjacency_consistent
            && self.ids_ordered
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphData", try_from = "GraphData")]
pub struct LabeledGraph {
    vertices: Vec<VertexRec>,
    edges: Vec<EdgeRec>,
    rectangles: Vec<Rectangle>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

#[derive(Serialize, Deserialize)]
struct GraphData {
    vertices: Vec<VertexRec>,
    edges: Vec<EdgeRec>,
    #[serde(default)]
    rectangles: Vec<Rectangle>,
}

impl From<LabeledGraph> for GraphData {
    fn from(g: LabeledGraph) -> Self {
        GraphData {
            vertices: g.vertices,
            edges: g.edges,
            rectangles: g.rectangles,
        }
    }
}

impl TryFrom<GraphData> for LabeledGraph {
    type Error = GraphError;

    fn try_from(d: GraphData) -> Result<Self, Self::Error> {
        LabeledGraph::from_parts(d.vertices, d.edges, d.rectangles)
    }
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl LabeledGraph {
    fn empty() -> Self {
        LabeledGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            rectangles: Vec::new(),
            adjacency: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// The seed of a model: a rectangle (two vertical and two aclinic sides,
    /// opposite sides sharing orientation) or a single unoriented edge.
    pub fn new_seed(kind: SeedKind) -> Self {
        let mut g = Self::empty();
        match kind {
            SeedKind::Rectangle => {
                for _ in 0..4 {
                    g.push_vertex(0, Origin::Seed);
                }
                let sides = [
                    (0, 1, Orientation::Vertical),
                    (1, 2, Orientation::Aclinic),
                    (2, 3, Orientation::Vertical),
                    (3, 0, Orientation::Aclinic),
                ];
                let ids: Vec<EdgeId> = sides
                    .iter()
                    .map(|&(a, b, o)| {
                        let roles = Roles {
                            rectangle_side: true,
                            ..Roles::default()
                        };
                        g.push_edge(a, b, o, 0, Origin::Seed, roles)
                    })
                    .collect();
                g.rectangles.push(Rectangle {
                    id: 0,
                    corners: [0, 1, 2, 3],
                    vertical: [ids[0], ids[2]],
                    aclinic: [ids[1], ids[3]],
                    birth_step: 0,
                    origin: Origin::Seed,
                });
            }
            SeedKind::SingleEdge => {
                g.push_vertex(0, Origin::Seed);
                g.push_vertex(0, Origin::Seed);
                g.push_edge(0, 1, Orientation::Unoriented, 0, Origin::Seed, Roles::default());
            }
        }
        g
    }

    /// Unlabeled simple graph on `n` vertices, used for test corpora and
    /// imported plain edge lists. Every record is labeled as seed material.
    pub fn from_edge_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::empty();
        for _ in 0..n {
            g.push_vertex(0, Origin::Seed);
        }
        for &(a, b) in pairs {
            g.check_new_edge(a, b)?;
            g.push_edge(a, b, Orientation::Unoriented, 0, Origin::Seed, Roles::default());
        }
        Ok(g)
    }

    /// Rebuilds a graph from stored records, reconstructing the adjacency index.
    pub fn from_parts(
        vertices: Vec<VertexRec>,
        edges: Vec<EdgeRec>,
        rectangles: Vec<Rectangle>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty();
        for (i, v) in vertices.iter().enumerate() {
            if v.id != i {
                return Err(GraphError::UnknownVertex(v.id));
            }
        }
        g.adjacency = vec![Vec::new(); vertices.len()];
        g.vertices = vertices;
        for (i, e) in edges.into_iter().enumerate() {
            if e.id != i {
                return Err(GraphError::UnknownEdge(e.id));
            }
            g.check_new_edge(e.u, e.v)?;
            let (u, v) = key(e.u, e.v);
            g.adjacency[u].push((v, i));
            g.adjacency[v].push((u, i));
            g.index.insert((u, v), i);
            g.edges.push(EdgeRec { u, v, ..e });
        }
        for (i, r) in rectangles.iter().enumerate() {
            if r.id != i {
                return Err(GraphError::UnknownRectangle(r.id));
            }
            for &e in r.vertical.iter().chain(r.aclinic.iter()) {
                if e >= g.edges.len() {
                    return Err(GraphError::UnknownEdge(e));
                }
            }
        }
        g.rectangles = rectangles;
        Ok(g)
    }

    /// Rebuilds a labeled graph from edge records alone. Vertex records and
    /// the role/rectangle annotations are derived from the birth and origin
    /// labels: the lowest-id edge at a vertex is the one that created it.
    pub fn from_labeled_edges(edges: Vec<EdgeRec>) -> Result<Self, GraphError> {
        let n = edges.iter().map(|e| e.u.max(e.v) + 1).max().unwrap_or(0);
        let mut creator: Vec<Option<EdgeId>> = vec![None; n];
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if creator[x].is_none() {
                    creator[x] = Some(i);
                }
            }
        }
        let mut vertices = Vec::with_capacity(n);
        for (id, c) in creator.iter().enumerate() {
            let c = c.ok_or(GraphError::IsolatedVertex(id))?;
            vertices.push(VertexRec {
                id,
                birth_step: edges[c].birth_step,
                origin: edges[c].origin,
            });
        }
        let edges = edges
            .into_iter()
            .map(|e| EdgeRec {
                roles: Roles::default(),
                ..e
            })
            .collect();
        let mut g = Self::from_parts(vertices, edges, Vec::new())?;
        g.derive_annotations();
        Ok(g)
    }

    fn creation_edge(&self, x: VertexId) -> Option<EdgeId> {
        self.adjacency[x].iter().map(|&(_, e)| e).min()
    }

    fn derive_annotations(&mut self) {
        for e in &mut self.edges {
            e.roles.pendant = e.origin == Origin::Star;
            e.roles.triangle_member = matches!(e.origin, Origin::Triangle | Origin::Hub);
        }
        for w in 0..self.vertices.len() {
            if self.vertices[w].origin != Origin::Triangle {
                continue;
            }
            let mut first: Vec<EdgeId> = self.adjacency[w].iter().map(|&(_, e)| e).collect();
            first.sort_unstable();
            if first.len() < 2 {
                continue;
            }
            let a = self.edges[first[0]].other(w);
            let b = self.edges[first[1]].other(w);
            if let Some(&t) = self.index.get(&key(a, b)) {
                self.edges[t].roles.triangle_member = true;
            }
        }

        self.rectangles.clear();
        let seed_layout = [
            (0, 1, Orientation::Vertical),
            (1, 2, Orientation::Aclinic),
            (2, 3, Orientation::Vertical),
            (0, 3, Orientation::Aclinic),
        ];
        let has_seed_rect = self.edges.len() >= 4
            && seed_layout.iter().enumerate().all(|(i, &(a, b, o))| {
                let e = &self.edges[i];
                e.u == a && e.v == b && e.orientation == o && e.origin == Origin::Seed
            });
        if has_seed_rect {
            self.rectangles.push(Rectangle {
                id: 0,
                corners: [0, 1, 2, 3],
                vertical: [0, 2],
                aclinic: [1, 3],
                birth_step: 0,
                origin: Origin::Seed,
            });
            for i in 0..4 {
                self.edges[i].roles.rectangle_side = true;
            }
        }
        for id in 0..self.edges.len() {
            let e = &self.edges[id];
            if e.origin != Origin::Rectangle || e.orientation != Orientation::Vertical {
                continue;
            }
            let (x, y) = (e.u, e.v);
            let (Some(cx), Some(cy)) = (self.creation_edge(x), self.creation_edge(y)) else {
                continue;
            };
            let bx = self.edges[cx].other(x);
            let by = self.edges[cy].other(y);
            let Some(&target) = self.index.get(&key(bx, by)) else {
                continue;
            };
            let rid = self.rectangles.len();
            self.rectangles.push(Rectangle {
                id: rid,
                corners: [bx, by, y, x],
                vertical: [target, id],
                aclinic: [cx, cy],
                birth_step: self.edges[id].birth_step,
                origin: Origin::Rectangle,
            });
            for s in [target, id, cx, cy] {
                self.edges[s].roles.rectangle_side = true;
            }
        }
    }

    fn push_vertex(&mut self, birth_step: u32, origin: Origin) -> VertexId {
        let id = self.vertices.len();
        self.vertices.push(VertexRec {
            id,
            birth_step,
            origin,
        });
        self.adjacency.push(Vec::new());
        id
    }

    fn push_edge(
        &mut self,
        a: VertexId,
        b: VertexId,
        orientation: Orientation,
        birth_step: u32,
        origin: Origin,
        roles: Roles,
    ) -> EdgeId {
        let (u, v) = key(a, b);
        let id = self.edges.len();
        self.edges.push(EdgeRec {
            id,
            u,
            v,
            orientation,
            birth_step,
            origin,
            roles,
        });
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        self.index.insert((u, v), id);
        id
    }

    fn check_new_edge(&self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        let n = self.vertices.len();
        if a >= n {
            return Err(GraphError::UnknownVertex(a));
        }
        if b >= n {
            return Err(GraphError::UnknownVertex(b));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.index.contains_key(&key(a, b)) {
            let (u, v) = key(a, b);
            return Err(GraphError::DuplicateEdge(u, v));
        }
        Ok(())
    }

    /// Appends an edge without any simplicity check. Only meant for test
    /// harnesses that need to corrupt a graph on purpose.
    #[doc(hidden)]
    pub fn push_edge_unchecked(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        let (u, v) = key(a, b);
        let id = self.edges.len();
        self.edges.push(EdgeRec {
            id,
            u,
            v,
            orientation: Orientation::Unoriented,
            birth_step: 0,
            origin: Origin::Seed,
            roles: Roles::default(),
        });
        self.adjacency[u].push((v, id));
        if u != v {
            self.adjacency[v].push((u, id));
        }
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexRec] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeRec] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&EdgeRec> {
        self.edges.get(id)
    }

    pub fn rectangles(&self) -> &[Rectangle] {
        &self.rectangles
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    /// Neighbors paired with the connecting edge id, in insertion order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.index.get(&key(a, b)).copied()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_between(a, b).is_some()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// Applies one growth phase to a frozen target list.
    pub fn apply_growth(
        &mut self,
        step: u32,
        phase: Phase,
        targets: &Targets,
    ) -> Result<GrowthSummary, GraphError> {
        let before = (self.vertices.len(), self.edges.len(), self.rectangles.len());
        let mut triangles = 0;
        match (phase, targets) {
            (Phase::Hub, Targets::Rectangles(ids)) => {
                check_unique(ids, self.rectangles.len(), GraphError::UnknownRectangle)?;
                for &r in ids {
                    let corners = self.rectangles[r].corners;
                    let h = self.push_vertex(step, Origin::Hub);
                    for c in corners {
                        let roles = Roles {
                            triangle_member: true,
                            ..Roles::default()
                        };
                        self.push_edge(c, h, Orientation::Unoriented, step, Origin::Hub, roles);
                    }
                    triangles += 4;
                }
            }
            (Phase::Hub, Targets::Edges(_)) => {
                return Err(GraphError::WrongTargetKind {
                    phase: phase.name(),
                    expected: "rectangle",
                })
            }
            (_, Targets::Rectangles(_)) => {
                return Err(GraphError::WrongTargetKind {
                    phase: phase.name(),
                    expected: "edge",
                })
            }
            (_, Targets::Edges(ids)) => {
                check_unique(ids, self.edges.len(), GraphError::UnknownEdge)?;
                let frozen: Vec<(EdgeId, VertexId, VertexId, Orientation)> = ids
                    .iter()
                    .map(|&e| {
                        let r = &self.edges[e];
                        (e, r.u, r.v, r.orientation)
                    })
                    .collect();
                for (e, u, v, orientation) in frozen {
                    match phase {
                        Phase::Triangle => {
                            let w = self.push_vertex(step, Origin::Triangle);
                            let roles = Roles {
                                triangle_member: true,
                                ..Roles::default()
                            };
                            self.push_edge(u, w, Orientation::Unoriented, step, Origin::Triangle, roles);
                            self.push_edge(v, w, Orientation::Unoriented, step, Origin::Triangle, roles);
                            self.edges[e].roles.triangle_member = true;
                            triangles += 1;
                        }
                        Phase::Star => {
                            let roles = Roles {
                                pendant: true,
                                ..Roles::default()
                            };
                            for end in [u, v] {
                                let p = self.push_vertex(step, Origin::Star);
                                self.push_edge(end, p, Orientation::Vertical, step, Origin::Star, roles);
                            }
                        }
                        Phase::Rectangle => {
                            let up = self.push_vertex(step, Origin::Rectangle);
                            let vp = self.push_vertex(step, Origin::Rectangle);
                            let side = Roles {
                                rectangle_side: true,
                                ..Roles::default()
                            };
                            let a0 = self.push_edge(u, up, Orientation::Aclinic, step, Origin::Rectangle, side);
                            let a1 = self.push_edge(v, vp, Orientation::Aclinic, step, Origin::Rectangle, side);
                            let parallel = match orientation {
                                Orientation::Unoriented => Orientation::Vertical,
                                o => o,
                            };
                            let copy = self.push_edge(up, vp, parallel, step, Origin::Rectangle, side);
                            self.edges[e].roles.rectangle_side = true;
                            let id = self.rectangles.len();
                            self.rectangles.push(Rectangle {
                                id,
                                corners: [u, v, vp, up],
                                vertical: [e, copy],
                                aclinic: [a0, a1],
                                birth_step: step,
                                origin: Origin::Rectangle,
                            });
                        }
                        Phase::Hub => unreachable!(),
                    }
                }
            }
        }
        Ok(GrowthSummary {
            new_vertices: self.vertices.len() - before.0,
            new_edges: self.edges.len() - before.1,
            new_triangles: triangles,
            new_rectangles: self.rectangles.len() - before.2,
        })
    }

    /// Checks simplicity, connectivity, the degree-sum identity, adjacency
    /// consistency and id ordering. Never mutates.
    pub fn validate(&self) -> InvariantReport {
        let mut report = InvariantReport {
            simple: true,
            connected: true,
            degree_sum_ok: true,
            adjacency_consistent: true,
            ids_ordered: true,
            ..InvariantReport::default()
        };
        let n = self.vertices.len();

        let mut seen = HashSet::new();
        for e in &self.edges {
            if e.u == e.v {
                report.simple = false;
                report.violations.push(format!("edge {} is a self-loop at {}", e.id, e.u));
            } else if !seen.insert(key(e.u, e.v)) {
                report.simple = false;
                report
                    .violations
                    .push(format!("edge {} duplicates pair ({}, {})", e.id, e.u, e.v));
            }
            if e.u >= n || e.v >= n {
                report.adjacency_consistent = false;
                report.violations.push(format!("edge {} has an endpoint out of range", e.id));
            }
        }

        let mut rebuilt: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for e in self.edges.iter().filter(|e| e.u < n && e.v < n) {
            rebuilt[e.u].push((e.v, e.id));
            if e.u != e.v {
                rebuilt[e.v].push((e.u, e.id));
            }
        }
        if rebuilt != self.adjacency {
            report.adjacency_consistent = false;
            report
                .violations
                .push("adjacency index disagrees with the edge list".to_string());
        }

        report.degree_sum = self.adjacency.iter().map(Vec::len).sum();
        let loops = self.edges.iter().filter(|e| e.u == e.v).count();
        if report.degree_sum + loops != 2 * self.edges.len() {
            report.degree_sum_ok = false;
            report.violations.push(format!(
                "degree sum {} != 2|E| = {}",
                report.degree_sum,
                2 * self.edges.len()
            ));
        }

        if !self.is_connected() {
            report.connected = false;
            report.violations.push("graph is disconnected".to_string());
        }

        for (i, w) in self.vertices.windows(2).enumerate() {
            if w[1].birth_step < w[0].birth_step {
                report.ids_ordered = false;
                report
                    .violations
                    .push(format!("vertex {} is older than vertex {}", i + 1, i));
            }
        }
        if self.vertices.iter().enumerate().any(|(i, v)| v.id != i) {
            report.ids_ordered = false;
            report.violations.push("vertex ids are not contiguous".to_string());
        }
        report
    }
}

fn check_unique(
    ids: &[usize],
    len: usize,
    unknown: impl Fn(usize) -> GraphError,
) -> Result<(), GraphError> {
    let mut seen = HashSet::with_capacity(ids.len());
    for &id in ids {
        if id >= len {
            return Err(unknown(id));
        }
        if !seen.insert(id) {
            return Err(GraphError::DuplicateTarget(id));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_seed_is_a_labeled_four_cycle() {
        let g = LabeledGraph::new_seed(SeedKind::Rectangle);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2));
        let vertical = g
            .edges()
            .iter()
            .filter(|e| e.orientation == Orientation::Vertical)
            .count();
        assert_eq!(vertical, 2);
        let r = &g.rectangles()[0];
        for pair in [r.vertical, r.aclinic] {
            let a = g.edge(pair[0]).unwrap();
            let b = g.edge(pair[1]).unwrap();
            assert_eq!(a.orientation, b.orientation);
            // opposite sides share no endpoint
            assert!(a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v);
        }
        assert!(g.validate().is_ok());
    }

    #[test]
    fn single_edge_seed() {
        let g = LabeledGraph::new_seed(SeedKind::SingleEdge);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.edges()[0].orientation, Orientation::Unoriented);
    }

    #[test]
    fn triangle_on_single_edge() {
        let mut g = LabeledGraph::new_seed(SeedKind::SingleEdge);
        let s = g.apply_growth(1, Phase::Triangle, &Targets::Edges(vec![0])).unwrap();
        assert_eq!((s.new_vertices, s.new_edges, s.new_triangles), (1, 2, 1));
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(g.edges().iter().all(|e| e.roles.triangle_member));
    }

    #[test]
    fn star_on_aclinic_seed_edges() {
        let mut g = LabeledGraph::new_seed(SeedKind::Rectangle);
        let aclinic = g.rectangles()[0].aclinic.to_vec();
        let s = g.apply_growth(1, Phase::Star, &Targets::Edges(aclinic)).unwrap();
        assert_eq!((s.new_vertices, s.new_edges), (4, 4));
        for e in &g.edges()[4..] {
            assert!(e.roles.pendant);
            assert_eq!(e.orientation, Orientation::Vertical);
            assert_eq!(g.degree(e.v), 1);
        }
    }

    #[test]
    fn rectangle_growth_registers_a_four_cycle() {
        let mut g = LabeledGraph::new_seed(SeedKind::SingleEdge);
        let s = g.apply_growth(1, Phase::Rectangle, &Targets::Edges(vec![0])).unwrap();
        assert_eq!((s.new_vertices, s.new_edges, s.new_rectangles), (2, 3, 1));
        let r = &g.rectangles()[0];
        assert_eq!(r.corners, [0, 1, 3, 2]);
        let c = r.corners;
        for i in 0..4 {
            assert!(g.has_edge(c[i], c[(i + 1) % 4]));
        }
        assert_eq!(g.edge(r.aclinic[0]).unwrap().orientation, Orientation::Aclinic);
        assert_eq!(g.edge(r.vertical[1]).unwrap().orientation, Orientation::Vertical);
    }

    #[test]
    fn hub_on_seed_rectangle() {
        let mut g = LabeledGraph::new_seed(SeedKind::Rectangle);
        let s = g.apply_growth(1, Phase::Hub, &Targets::Rectangles(vec![0])).unwrap();
        assert_eq!((s.new_vertices, s.new_edges, s.new_triangles), (1, 4, 4));
        assert_eq!(g.degree(4), 4);
    }

    #[test]
    fn growth_rejects_bad_targets() {
        let mut g = LabeledGraph::new_seed(SeedKind::Rectangle);
        assert_eq!(
            g.apply_growth(1, Phase::Triangle, &Targets::Edges(vec![9])),
            Err(GraphError::UnknownEdge(9))
        );
        assert_eq!(
            g.apply_growth(1, Phase::Star, &Targets::Edges(vec![1, 1])),
            Err(GraphError::DuplicateTarget(1))
        );
        assert_eq!(
            g.apply_growth(1, Phase::Hub, &Targets::Rectangles(vec![3])),
            Err(GraphError::UnknownRectangle(3))
        );
        assert!(matches!(
            g.apply_growth(1, Phase::Hub, &Targets::Edges(vec![0])),
            Err(GraphError::WrongTargetKind { .. })
        ));
        // a failed call leaves the graph untouched
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
    }

    #[test]
    fn validate_flags_injected_duplicate() {
        let mut g = LabeledGraph::new_seed(SeedKind::Rectangle);
        g.push_edge_unchecked(0, 1);
        let report = g.validate();
        assert!(!report.simple);
        assert!(report.connected);
        assert!(!report.is_ok());
    }

    #[test]
    fn validate_flags_disconnection() {
        let g = LabeledGraph::from_edge_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let report = g.validate();
        assert!(report.simple && !report.connected);
    }

    #[test]
    fn edge_pairs_reject_non_simple_input() {
        assert_eq!(
            LabeledGraph::from_edge_pairs(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            LabeledGraph::from_edge_pairs(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
    }
}
