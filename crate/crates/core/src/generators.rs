//! Model construction: the hybrid-growth network `N(t)` driven by a
//! [`RuleConfig`], the pseudofractal web `N1(t)`, and the degree tables of the
//! Apollonian and Sierpinski reference models.
//!
//! Step 1 of `N(t)` is fixed: triangle growth on the two vertical seed edges
//! and star growth on the two aclinic seed edges. From step 2 on, every step
//! runs four phases in this order, each on a target list frozen when the phase
//! starts:
//!
//! 1. triangle growth on triangle edges (per `triangle_scope`);
//! 2. rectangle growth on pendant edges (per `rect_scope`);
//! 3. star growth on aclinic rectangle sides (per `star_scope`);
//! 4. hub growth on rectangles (per `hub_scope`).
//!
//! Phase 3 runs after phase 2 so that "rectangles born in this step" is a
//! meaningful star source.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GenerateError;
use crate::graph::{EdgeId, LabeledGraph, Origin, Phase, RectId, SeedKind, Targets, VertexId};

/// Largest `t` accepted by [`generate_n`] unless a caller raises it.
pub const DEFAULT_N_BOUND: u32 = 8;
/// Largest `t` accepted by [`generate_n1`].
pub const DEFAULT_N1_BOUND: u32 = 10;

/// The vertex whose star and rectangle increments feed `alpha`/`beta`.
pub const TRACKED_CORNER: VertexId = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriangleScope {
    #[serde(rename = "all-triangle-edges")]
    AllTriangleEdges,
    #[serde(rename = "triangle-edges-born-at-t-1")]
    BornAtPrevious,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HubScope {
    #[serde(rename = "rectangles-born-at-t-1")]
    BornAtPrevious,
    #[serde(rename = "rectangles-born-in-step")]
    BornInStep,
    #[serde(rename = "none")]
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StarSource {
    #[serde(rename = "seed-aclinic-always")]
    SeedAclinic,
    #[serde(rename = "aclinic-of-rectangles-born-in-step")]
    InStepRectangles,
    #[serde(rename = "aclinic-of-rectangles-born-at-t-1")]
    PreviousStepRectangles,
    #[serde(rename = "all-old-rectangle-aclinic")]
    AllOldRectangles,
}

impl StarSource {
    pub const ALL: [StarSource; 4] = [
        StarSource::SeedAclinic,
        StarSource::InStepRectangles,
        StarSource::PreviousStepRectangles,
        StarSource::AllOldRectangles,
    ];

    fn bit(self) -> u8 {
        match self {
            StarSource::SeedAclinic => 1,
            StarSource::InStepRectangles => 2,
            StarSource::PreviousStepRectangles => 4,
            StarSource::AllOldRectangles => 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RectScope {
    #[serde(rename = "pendants-born-at-t-1")]
    PendantsBornAtPrevious,
    #[serde(rename = "all-pendants")]
    AllPendants,
}

/// Declarative growth rules for steps `t >= 2`.
///
/// Configurations are totally ordered by the tuple
/// `(triangle_scope, hub_scope, rect_scope, !step2_exception, star mask)`,
/// each enum compared in declaration order and the star set compared by its
/// bit mask (seed = 1, in-step = 2, previous-step = 4, all-old = 8).
/// [`calibrate_rules`] reports matches in this order and the shipped default
/// is the first match against the hand-counted anchors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleConfig {
    pub triangle_scope: TriangleScope,
    pub hub_scope: HubScope,
    pub star_scope: BTreeSet<StarSource>,
    pub rect_scope: RectScope,
    /// At `t = 2` star growth targets only the seed aclinic edges.
    pub step2_exception: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            triangle_scope: TriangleScope::AllTriangleEdges,
            hub_scope: HubScope::BornAtPrevious,
            star_scope: [StarSource::SeedAclinic, StarSource::InStepRectangles]
                .into_iter()
                .collect(),
            rect_scope: RectScope::PendantsBornAtPrevious,
            step2_exception: true,
        }
    }
}

impl RuleConfig {
    pub fn star_mask(&self) -> u8 {
        self.star_scope.iter().map(|s| s.bit()).sum()
    }

    fn order_key(&self) -> (TriangleScope, HubScope, RectScope, bool, u8) {
        (
            self.triangle_scope,
            self.hub_scope,
            self.rect_scope,
            !self.step2_exception,
            self.star_mask(),
        )
    }

    /// Rejects configurations whose growth would stall: without any star
    /// source no pendants appear after step 2 and rectangle growth dies out.
    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.star_scope.is_empty() {
            return Err(GenerateError::InvalidConfig(
                "star_scope is empty; no pendant edges after t = 2".into(),
            ));
        }
        Ok(())
    }

    /// Compact whitespace-free identifier, stable across versions.
    pub fn fingerprint(&self) -> String {
        let tri = match self.triangle_scope {
            TriangleScope::AllTriangleEdges => "all",
            TriangleScope::BornAtPrevious => "prev",
        };
        let hub = match self.hub_scope {
            HubScope::BornAtPrevious => "prev",
            HubScope::BornInStep => "step",
            HubScope::None => "none",
        };
        let rect = match self.rect_scope {
            RectScope::PendantsBornAtPrevious => "prev",
            RectScope::AllPendants => "all",
        };
        format!(
            "T{tri}-H{hub}-S{}-R{rect}-X{}",
            self.star_mask(),
            u8::from(self.step2_exception)
        )
    }

    /// Every configuration in the rule space, in the documented total order.
    pub fn space() -> Vec<RuleConfig> {
        let mut out = Vec::new();
        for triangle_scope in [TriangleScope::AllTriangleEdges, TriangleScope::BornAtPrevious] {
            for hub_scope in [HubScope::BornAtPrevious, HubScope::BornInStep, HubScope::None] {
                for rect_scope in [RectScope::PendantsBornAtPrevious, RectScope::AllPendants] {
                    for step2_exception in [true, false] {
                        for mask in 1u8..16 {
                            let star_scope = StarSource::ALL
                                .into_iter()
                                .filter(|s| mask & s.bit() != 0)
                                .collect();
                            out.push(RuleConfig {
                                triangle_scope,
                                hub_scope,
                                star_scope,
                                rect_scope,
                                step2_exception,
                            });
                        }
                    }
                }
            }
        }
        debug_assert!(out.windows(2).all(|w| w[0].order_key() < w[1].order_key()));
        out
    }
}

impl PartialOrd for RuleConfig {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RuleConfig {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for RuleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

/// Counters for one growth step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u32,
    /// New triangles that are not pseudofractal growth of an existing triangle.
    pub delta: u64,
    /// New rectangles.
    pub theta: u64,
    /// New pendant edges.
    pub pendants: u64,
    /// Star edges added at the tracked corner.
    pub alpha: u64,
    /// Rectangles created at the tracked corner.
    pub beta: u64,
    pub vertices: u64,
    pub edges: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTrace {
    pub steps: Vec<StepRecord>,
}

impl GrowthTrace {
    pub fn step(&self, t: u32) -> Option<&StepRecord> {
        self.steps.get(t as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClassRow {
    pub rank: usize,
    pub degree: u64,
    pub count: u64,
}

pub fn generate_n(t: u32, config: &RuleConfig) -> Result<(LabeledGraph, GrowthTrace), GenerateError> {
    generate_n_bounded(t, config, DEFAULT_N_BOUND)
}

pub fn generate_n_bounded(
    t: u32,
    config: &RuleConfig,
    bound: u32,
) -> Result<(LabeledGraph, GrowthTrace), GenerateError> {
    if t > bound {
        return Err(GenerateError::OverBound { t, bound });
    }
    config.validate()?;
    let mut g = LabeledGraph::new_seed(SeedKind::Rectangle);
    let mut trace = GrowthTrace {
        steps: vec![StepRecord {
            vertices: 4,
            edges: 4,
            ..StepRecord::default()
        }],
    };
    for step in 1..=t {
        let rec = grow_step(&mut g, step, config)?;
        trace.steps.push(rec);
    }
    Ok((g, trace))
}

fn grow_step(g: &mut LabeledGraph, step: u32, config: &RuleConfig) -> Result<StepRecord, GenerateError> {
    let mut rec = StepRecord {
        t: step,
        ..StepRecord::default()
    };
    let seed = g.rectangles()[0].clone();

    let tri_targets: Vec<EdgeId> = if step == 1 {
        seed.vertical.to_vec()
    } else {
        g.edges()
            .iter()
            .filter(|e| e.roles.triangle_member)
            .filter(|e| match config.triangle_scope {
                TriangleScope::AllTriangleEdges => true,
                TriangleScope::BornAtPrevious => e.birth_step + 1 == step,
            })
            .map(|e| e.id)
            .collect()
    };
    rec.delta += tri_targets
        .iter()
        .filter(|&&e| !g.edges()[e].roles.triangle_member)
        .count() as u64;
    g.apply_growth(step, Phase::Triangle, &Targets::Edges(tri_targets))?;

    if step >= 2 {
        let rect_targets: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|e| match config.rect_scope {
                RectScope::PendantsBornAtPrevious => e.roles.pendant && e.birth_step + 1 == step,
                RectScope::AllPendants => g.degree(e.u) == 1 || g.degree(e.v) == 1,
            })
            .map(|e| e.id)
            .collect();
        rec.beta = rect_targets
            .iter()
            .filter(|&&e| {
                let r = &g.edges()[e];
                r.u == TRACKED_CORNER || r.v == TRACKED_CORNER
            })
            .count() as u64;
        let s = g.apply_growth(step, Phase::Rectangle, &Targets::Edges(rect_targets))?;
        rec.theta = s.new_rectangles as u64;
    }

    let star_targets: Vec<EdgeId> = if step == 1 || (step == 2 && config.step2_exception) {
        seed.aclinic.to_vec()
    } else {
        let mut set = BTreeSet::new();
        for src in &config.star_scope {
            let rects: Vec<&crate::graph::Rectangle> = match src {
                StarSource::SeedAclinic => vec![&g.rectangles()[0]],
                StarSource::InStepRectangles => {
                    g.rectangles().iter().filter(|r| r.birth_step == step).collect()
                }
                StarSource::PreviousStepRectangles => g
                    .rectangles()
                    .iter()
                    .filter(|r| r.birth_step + 1 == step)
                    .collect(),
                StarSource::AllOldRectangles => {
                    g.rectangles().iter().filter(|r| r.birth_step < step).collect()
                }
            };
            for r in rects {
                set.extend(r.aclinic);
            }
        }
        set.into_iter().collect()
    };
    rec.alpha = star_targets
        .iter()
        .filter(|&&e| {
            let r = &g.edges()[e];
            r.u == TRACKED_CORNER || r.v == TRACKED_CORNER
        })
        .count() as u64;
    rec.pendants = 2 * star_targets.len() as u64;
    g.apply_growth(step, Phase::Star, &Targets::Edges(star_targets))?;

    if step >= 2 {
        let hub_targets: Vec<RectId> = g
            .rectangles()
            .iter()
            .filter(|r| r.origin == Origin::Rectangle)
            .filter(|r| match config.hub_scope {
                HubScope::BornAtPrevious => r.birth_step + 1 == step,
                HubScope::BornInStep => r.birth_step == step,
                HubScope::None => false,
            })
            .map(|r| r.id)
            .collect();
        let s = g.apply_growth(step, Phase::Hub, &Targets::Rectangles(hub_targets))?;
        rec.delta += s.new_triangles as u64;
    }

    rec.vertices = g.vertex_count() as u64;
    rec.edges = g.edge_count() as u64;
    Ok(rec)
}

/// A calibration target: exact vertex and edge counts at step `t`, and
/// optionally the pendant (`L`) and rectangle (`Theta`) increments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub t: u32,
    pub vertices: u64,
    pub edges: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pendants: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rectangles: Option<u64>,
}

impl Anchor {
    pub fn new(t: u32, vertices: u64, edges: u64) -> Self {
        Anchor {
            t,
            vertices,
            edges,
            pendants: None,
            rectangles: None,
        }
    }

    fn matches(&self, rec: &StepRecord) -> bool {
        rec.vertices == self.vertices
            && rec.edges == self.edges
            && self.pendants.is_none_or(|l| rec.pendants == l)
            && self.rectangles.is_none_or(|th| rec.theta == th)
    }
}

/// The hand counts for `t = 1, 2, 3`.
pub fn hand_count_anchors() -> Vec<Anchor> {
    vec![
        Anchor::new(1, 10, 12),
        Anchor::new(2, 28, 40),
        Anchor::new(3, 78, 124),
    ]
}

/// Enumerates `space` (in its given order), keeping every valid configuration
/// whose growth run reproduces all anchors exactly.
pub fn calibrate_rules(anchors: &[Anchor], space: &[RuleConfig]) -> Result<Vec<RuleConfig>, GenerateError> {
    let max_t = anchors.iter().map(|a| a.t).max().ok_or(GenerateError::NoAnchors)?;
    if max_t > DEFAULT_N_BOUND {
        return Err(GenerateError::OverBound {
            t: max_t,
            bound: DEFAULT_N_BOUND,
        });
    }
    let mut out = Vec::new();
    for config in space {
        if config.validate().is_err() {
            continue;
        }
        let (_, trace) = generate_n(max_t, config)?;
        if anchors.iter().all(|a| a.matches(&trace.steps[a.t as usize])) {
            out.push(config.clone());
        }
    }
    Ok(out)
}

/// The pseudofractal web: a single edge, then triangle growth on every edge
/// at every step.
pub fn generate_n1(t: u32) -> Result<LabeledGraph, GenerateError> {
    if t > DEFAULT_N1_BOUND {
        return Err(GenerateError::OverBound {
            t,
            bound: DEFAULT_N1_BOUND,
        });
    }
    let mut g = LabeledGraph::new_seed(SeedKind::SingleEdge);
    for step in 1..=t {
        let all: Vec<EdgeId> = (0..g.edge_count()).collect();
        g.apply_growth(step, Phase::Triangle, &Targets::Edges(all))?;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppendixModel {
    Apollonian,
    Sierpinski,
}

impl FromStr for AppendixModel {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "apollonian" => Ok(AppendixModel::Apollonian),
            "sierpinski" => Ok(AppendixModel::Sierpinski),
            other => Err(GenerateError::UnknownModel(other.to_string())),
        }
    }
}

/// Largest `t` whose appendix table fits in 64-bit counts.
pub const APPENDIX_MAX_T: u32 = 24;

/// Degree classes of the Apollonian or Sierpinski network after `t` steps.
pub fn appendix_degree_table(model: AppendixModel, t: u32) -> Result<Vec<DegreeClassRow>, GenerateError> {
    if t == 0 {
        return Err(GenerateError::ZeroStep);
    }
    if t > APPENDIX_MAX_T {
        return Err(GenerateError::OverBound {
            t,
            bound: APPENDIX_MAX_T,
        });
    }
    let rows = match model {
        AppendixModel::Apollonian => (1..=t + 1)
            .map(|rank| DegreeClassRow {
                rank: rank as usize,
                degree: 3 * 2u64.pow(t + 1 - rank),
                count: 3u64.pow(rank - 1),
            })
            .collect(),
        AppendixModel::Sierpinski => (1..=t)
            .map(|rank| DegreeClassRow {
                rank: rank as usize,
                degree: 3u64.pow(t + 1 - rank) + 1,
                count: if rank == 1 { 6 } else { 3 * 6u64.pow(rank - 1) },
            })
            .collect(),
    };
    Ok(rows)
}

/// One degree class of the pseudofractal web: `count = 3^i` vertices of degree
/// `2^(t-i)`, each on `2^(t-i) - 1` triangles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudofractalClass {
    pub count: u64,
    pub degree: u64,
    pub triangles: u64,
    /// Clustering coefficient as an exact fraction `(numerator, denominator)`.
    pub clustering: (u64, u64),
}

pub fn pseudofractal_vertex_classes(t: u32) -> Result<Vec<PseudofractalClass>, GenerateError> {
    if t == 0 {
        return Err(GenerateError::ZeroStep);
    }
    if t > 40 {
        return Err(GenerateError::OverBound { t, bound: 40 });
    }
    Ok((0..t)
        .map(|i| {
            let degree = 1u64 << (t - i);
            let triangles = degree - 1;
            let edges_possible = degree * (degree - 1) / 2;
            let g = num_integer::gcd(triangles, edges_possible);
            PseudofractalClass {
                count: 3u64.pow(i),
                degree,
                triangles,
                clustering: (triangles / g, edges_possible / g),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(t: u32) -> (usize, usize) {
        let (g, _) = generate_n(t, &RuleConfig::default()).unwrap();
        (g.vertex_count(), g.edge_count())
    }

    #[test]
    fn hand_counts_reproduced() {
        assert_eq!(counts(0), (4, 4));
        assert_eq!(counts(1), (10, 12));
        assert_eq!(counts(2), (28, 40));
        assert_eq!(counts(3), (78, 124));
    }

    #[test]
    fn trace_matches_measured_pendants() {
        let (g, trace) = generate_n(3, &RuleConfig::default()).unwrap();
        assert_eq!(trace.steps.len(), 4);
        let l: Vec<u64> = trace.steps.iter().map(|s| s.pendants).collect();
        assert_eq!(l, vec![0, 4, 4, 20]);
        let theta: Vec<u64> = trace.steps.iter().map(|s| s.theta).collect();
        assert_eq!(theta, vec![0, 0, 4, 4]);
        let leaves = (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).count();
        assert_eq!(leaves as u64, trace.steps[3].pendants);
    }

    #[test]
    fn t2_pendants() {
        let (g, trace) = generate_n(2, &RuleConfig::default()).unwrap();
        let leaves = (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).count();
        assert_eq!(leaves, 4);
        assert_eq!(trace.steps[2].pendants, 4);
    }

    #[test]
    fn in_step_star_without_exception_overshoots_t2() {
        let config = RuleConfig {
            step2_exception: false,
            ..RuleConfig::default()
        };
        let (_, trace) = generate_n(2, &config).unwrap();
        assert_eq!(trace.steps[2].pendants, 20);
    }

    #[test]
    fn over_bound_and_invalid_config() {
        assert!(matches!(
            generate_n(9, &RuleConfig::default()),
            Err(GenerateError::OverBound { .. })
        ));
        let empty = RuleConfig {
            star_scope: BTreeSet::new(),
            ..RuleConfig::default()
        };
        assert!(matches!(generate_n(2, &empty), Err(GenerateError::InvalidConfig(_))));
    }

    #[test]
    fn config_space_is_ordered_and_sized() {
        let space = RuleConfig::space();
        assert_eq!(space.len(), 2 * 3 * 2 * 2 * 15);
        assert!(space.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fingerprint_has_no_whitespace() {
        let f = RuleConfig::default().fingerprint();
        assert_eq!(f, "Tall-Hprev-S3-Rprev-X1");
    }

    #[test]
    fn config_json_round_trip() {
        for c in RuleConfig::space().iter().step_by(17) {
            let s = serde_json::to_string(c).unwrap();
            let back: RuleConfig = serde_json::from_str(&s).unwrap();
            assert_eq!(&back, c);
        }
    }

    #[test]
    fn calibration_returns_default_first() {
        let found = calibrate_rules(&hand_count_anchors(), &RuleConfig::space()).unwrap();
        assert!(!found.is_empty());
        assert_eq!(found[0], RuleConfig::default());
    }

    #[test]
    fn seed_anchor_accepts_everything() {
        let space = RuleConfig::space();
        let found = calibrate_rules(&[Anchor::new(0, 4, 4)], &space).unwrap();
        assert_eq!(found.len(), space.len());
    }

    #[test]
    fn contradictory_anchor_matches_nothing() {
        let found = calibrate_rules(&[Anchor::new(3, 78, 125)], &RuleConfig::space()).unwrap();
        assert!(found.is_empty());
        assert_eq!(calibrate_rules(&[], &RuleConfig::space()), Err(GenerateError::NoAnchors));
    }

    #[test]
    fn n1_counts() {
        let g = generate_n1(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let g = generate_n1(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        let g = generate_n1(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 27));
        assert!(generate_n1(11).is_err());
    }

    #[test]
    fn appendix_tables() {
        let t = 6;
        let a = appendix_degree_table(AppendixModel::Apollonian, t).unwrap();
        assert_eq!(a.len(), t as usize + 1);
        assert_eq!((a[0].degree, a[0].count), (3 * 64, 1));
        assert_eq!((a[t as usize].degree, a[t as usize].count), (3, 729));
        let s = appendix_degree_table(AppendixModel::Sierpinski, t).unwrap();
        assert_eq!((s[0].degree, s[0].count), (730, 6));
        assert_eq!((s[1].degree, s[1].count), (244, 18));
        assert!("koch".parse::<AppendixModel>().is_err());
        assert!(appendix_degree_table(AppendixModel::Sierpinski, 0).is_err());
    }

    #[test]
    fn pseudofractal_classes() {
        let t = 5;
        let rows = pseudofractal_vertex_classes(t).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!((rows[0].degree, rows[0].clustering), (32, (1, 16)));
        let last = rows.last().unwrap();
        assert_eq!((last.degree, last.clustering, last.count), (2, (1, 1), 81));
        for r in &rows {
            // c * k = 2
            assert_eq!(r.clustering.0 * r.degree, 2 * r.clustering.1);
        }
    }
}
