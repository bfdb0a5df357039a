//! Exact graph-side measurements: degree structure, power-law and Zipf
//! statistics, clustering, diameter and average path length.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::MetricsError;
use crate::exact::{rational_str, rational_to_f64};
use crate::generators::DegreeClassRow;
use crate::graph::LabeledGraph;

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub histogram: BTreeMap<u64, u64>,
    pub classes: Vec<DegreeClassRow>,
    #[serde(with = "rational_str")]
    pub average_degree: BigRational,
    /// `P_cum(k)`: fraction of vertices with degree at least `k`, for every
    /// degree present.
    #[serde(with = "cumulative_str")]
    pub cumulative: BTreeMap<u64, BigRational>,
}

mod cumulative_str {
    use super::*;
    use crate::exact::{parse_rational, rational_to_string};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, BigRational>, s: S) -> Result<S::Ok, S::Error> {
        let as_str: BTreeMap<u64, String> = m.iter().map(|(k, v)| (*k, rational_to_string(v))).collect();
        as_str.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, BigRational>, D::Error> {
        let raw = BTreeMap::<u64, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| parse_rational(&v).map(|r| (k, r)).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Degree classes sorted by strictly decreasing degree, ranked from 1.
pub fn classes_from_histogram(histogram: &BTreeMap<u64, u64>) -> Vec<DegreeClassRow> {
    histogram
        .iter()
        .rev()
        .enumerate()
        .map(|(i, (&degree, &count))| DegreeClassRow {
            rank: i + 1,
            degree,
            count,
        })
        .collect()
}

pub fn degree_report(graph: &LabeledGraph) -> Result<DegreeReport, MetricsError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut histogram = BTreeMap::new();
    for v in 0..n {
        *histogram.entry(graph.degree(v) as u64).or_insert(0) += 1;
    }
    let classes = classes_from_histogram(&histogram);
    let mut cumulative = BTreeMap::new();
    let mut running = 0u64;
    for row in &classes {
        running += row.count;
        cumulative.insert(row.degree, ratio(running, n as u64));
    }
    Ok(DegreeReport {
        histogram,
        classes,
        average_degree: ratio(2 * graph.edge_count() as u64, n as u64),
        cumulative,
    })
}

/// `P_cum` at each class, in rank order.
pub fn cumulative_from_classes(classes: &[DegreeClassRow]) -> Vec<f64> {
    let total: u64 = classes.iter().map(|r| r.count).sum();
    let mut running = 0u64;
    classes
        .iter()
        .map(|r| {
            running += r.count;
            running as f64 / total as f64
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in natural-log units.
    pub residual: f64,
}

/// Ordinary least squares of `ln y` against `ln x`.
pub fn fit_log_log(points: &[(f64, f64)]) -> Option<LogLogFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return None;
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Some(LogLogFit {
        slope,
        intercept,
        residual,
    })
}

/// Least-squares slope of `ln P_cum(k)` against `ln k`; a scale-free degree
/// sequence with exponent `gamma` gives about `1 - gamma`.
pub fn powerlaw_fit(classes: &[DegreeClassRow]) -> Result<LogLogFit, MetricsError> {
    if classes.len() < 3 {
        return Err(MetricsError::TooFewClasses(classes.len()));
    }
    let p = cumulative_from_classes(classes);
    let points: Vec<(f64, f64)> = classes.iter().zip(p).map(|(r, p)| (r.degree as f64, p)).collect();
    fit_log_log(&points).ok_or(MetricsError::TooFewClasses(classes.len()))
}

/// Weight each rank contributes to the Zipf frequency numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZipfWeighting {
    /// Vertex counts, `f_r = sum_{s <= r} n_s / 2|E|`.
    #[default]
    VertexCount,
    /// Degree mass, `f_r = sum_{s <= r} n_s k_s / 2|E|`.
    DegreeMass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfFrequency {
    pub rank: usize,
    pub degree: u64,
    #[serde(with = "rational_str")]
    pub frequency: BigRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfReport {
    pub weighting: ZipfWeighting,
    pub lambda: f64,
    pub frequencies: Vec<ZipfFrequency>,
    /// `f_r^lambda / P_cum(k >= k_r)` per rank.
    pub ratios: Vec<f64>,
    /// `max(ratio) / min(ratio)`.
    pub spread: f64,
    /// Log-log slope of `f_r` against `P_cum(k_r)`; `None` below two ranks.
    pub slope_vs_cumulative: Option<f64>,
    /// Log-log slope of `f_r` against `k_r`.
    pub slope_vs_degree: Option<f64>,
    pub note: String,
}

/// Rank-frequency statistics over the upper degree tail: the frequency at
/// rank `r` accumulates ranks `1..=r`, i.e. every degree at least `k_r`.
pub fn zipf_report(
    classes: &[DegreeClassRow],
    lambda: f64,
    weighting: ZipfWeighting,
) -> Result<ZipfReport, MetricsError> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(MetricsError::NonPositiveLambda(lambda.to_string()));
    }
    if classes.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let mass: u64 = classes.iter().map(|r| r.degree * r.count).sum();
    let p = cumulative_from_classes(classes);
    let mut running = 0u64;
    let mut frequencies = Vec::with_capacity(classes.len());
    let mut ratios = Vec::with_capacity(classes.len());
    for (row, &pc) in classes.iter().zip(&p) {
        running += match weighting {
            ZipfWeighting::VertexCount => row.count,
            ZipfWeighting::DegreeMass => row.count * row.degree,
        };
        let f = ratio(running, mass);
        ratios.push(rational_to_f64(&f).powf(lambda) / pc);
        frequencies.push(ZipfFrequency {
            rank: row.rank,
            degree: row.degree,
            frequency: f,
        });
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let fs: Vec<f64> = frequencies.iter().map(|f| rational_to_f64(&f.frequency)).collect();
    let vs_p: Vec<(f64, f64)> = p.iter().cloned().zip(fs.iter().cloned()).collect();
    let vs_k: Vec<(f64, f64)> = classes.iter().map(|r| r.degree as f64).zip(fs.iter().cloned()).collect();
    let note = match weighting {
        ZipfWeighting::VertexCount => "per-vertex frequency: cumulative vertex count over 2|E|",
        ZipfWeighting::DegreeMass => "degree-mass frequency: cumulative n*k over 2|E|",
    };
    Ok(ZipfReport {
        weighting,
        lambda,
        frequencies,
        ratios,
        spread: max / min,
        slope_vs_cumulative: fit_log_log(&vs_p).map(|f| f.slope),
        slope_vs_degree: fit_log_log(&vs_k).map(|f| f.slope),
        note: note.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringReport {
    /// Number of edges among the neighbors of each vertex.
    pub triangles: Vec<u64>,
    #[serde(with = "rational_vec")]
    pub per_vertex: Vec<BigRational>,
    #[serde(with = "rational_str")]
    pub average: BigRational,
}

mod rational_vec {
    use super::*;
    use crate::exact::{parse_rational, rational_to_string};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rational_to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Local clustering `e / (k(k-1)/2)` for every vertex; vertices of degree 0
/// or 1 get 0.
pub fn clustering_report(graph: &LabeledGraph) -> ClusteringReport {
    let n = graph.vertex_count();
    let mut mark = vec![usize::MAX; n];
    let mut triangles = Vec::with_capacity(n);
    let mut per_vertex = Vec::with_capacity(n);
    // sum of e over vertices of each degree
    let mut by_degree: BTreeMap<u64, u64> = BTreeMap::new();
    for v in 0..n {
        for w in graph.neighbors(v) {
            mark[w] = v;
        }
        let mut twice = 0u64;
        for w in graph.neighbors(v) {
            twice += graph.neighbors(w).filter(|&x| mark[x] == v).count() as u64;
        }
        let e = twice / 2;
        let k = graph.degree(v) as u64;
        triangles.push(e);
        if k < 2 {
            per_vertex.push(BigRational::zero());
        } else {
            per_vertex.push(ratio(e, k * (k - 1) / 2));
            *by_degree.entry(k).or_insert(0) += e;
        }
    }
    let mut total = BigRational::zero();
    for (k, e) in by_degree {
        total += ratio(e, k * (k - 1) / 2);
    }
    let average = if n == 0 { total } else { total / BigInt::from(n) };
    ClusteringReport {
        triangles,
        per_vertex,
        average,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "sources")]
pub enum DistanceMode {
    Exact,
    Sampled(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum AveragePathLength {
    Exact {
        #[serde(with = "rational_str")]
        value: BigRational,
    },
    Sampled {
        estimate: f64,
        sources: usize,
    },
}

impl AveragePathLength {
    pub fn as_f64(&self) -> f64 {
        match self {
            AveragePathLength::Exact { value } => rational_to_f64(value),
            AveragePathLength::Sampled { estimate, .. } => *estimate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    /// Largest eccentricity among the BFS sources (the true diameter in
    /// exact mode, a lower bound when sampled).
    pub diameter: u64,
    pub apl: AveragePathLength,
}

/// Unweighted distances from `source`; `u32::MAX` marks unreachable vertices.
pub fn bfs_distances(graph: &LabeledGraph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; graph.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x] + 1;
        for y in graph.neighbors(x) {
            if dist[y] == u32::MAX {
                dist[y] = d;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Sources used in sampled mode: every `ceil(|V|/n)`-th vertex id from 0.
pub fn sample_sources(vertex_count: usize, n_sources: usize) -> Vec<usize> {
    let stride = vertex_count.div_ceil(n_sources).max(1);
    (0..vertex_count).step_by(stride).take(n_sources).collect()
}

pub fn distance_report(graph: &LabeledGraph, mode: DistanceMode) -> Result<DistanceReport, MetricsError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let sources: Vec<usize> = match mode {
        DistanceMode::Exact => (0..n).collect(),
        DistanceMode::Sampled(k) if k < 2 => return Err(MetricsError::TooFewSources(k)),
        DistanceMode::Sampled(k) => sample_sources(n, k),
    };
    let mut diameter = 0u64;
    let mut sum = 0u64;
    for &s in &sources {
        let dist = bfs_distances(graph, s);
        for &d in &dist {
            if d == u32::MAX {
                return Err(MetricsError::Disconnected);
            }
            diameter = diameter.max(d as u64);
            sum += d as u64;
        }
    }
    let apl = match mode {
        DistanceMode::Exact => {
            let value = if n < 2 {
                BigRational::zero()
            } else {
                // every unordered pair was counted twice
                ratio(sum, (n as u64) * (n as u64 - 1))
            };
            AveragePathLength::Exact { value }
        }
        DistanceMode::Sampled(_) => AveragePathLength::Sampled {
            estimate: if n < 2 {
                0.0
            } else {
                sum as f64 / (sources.len() as f64 * (n as f64 - 1.0))
            },
            sources: sources.len(),
        },
    };
    Ok(DistanceReport { diameter, apl })
}

/// `(k, n)` pairs as degree-class rows, ranked in the order given.
pub fn rows(pairs: &[(u64, u64)]) -> Vec<DegreeClassRow> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(degree, count))| DegreeClassRow {
            rank: i + 1,
            degree,
            count,
        })
        .collect()
}

/// Every measurement in this module on one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub vertices: usize,
    pub edges: usize,
    pub degree: DegreeReport,
    pub powerlaw: Option<LogLogFit>,
    pub zipf: Option<ZipfReport>,
    #[serde(with = "rational_str")]
    pub clustering_average: BigRational,
    pub distance: Option<DistanceReport>,
}

pub fn analyze(graph: &LabeledGraph, mode: DistanceMode) -> Result<Analysis, MetricsError> {
    let degree = degree_report(graph)?;
    let distance = match distance_report(graph, mode) {
        Ok(d) => Some(d),
        Err(MetricsError::Disconnected) => None,
        Err(e) => return Err(e),
    };
    Ok(Analysis {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        powerlaw: powerlaw_fit(&degree.classes).ok(),
        zipf: zipf_report(&degree.classes, 1.0, ZipfWeighting::VertexCount).ok(),
        clustering_average: clustering_report(graph).average,
        distance,
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_n, RuleConfig};
    use crate::graph::SeedKind;
    use num_traits::One;

    fn is_unit(r: &BigRational) -> bool {
        r.is_one()
    }

    fn n1() -> LabeledGraph {
        generate_n(1, &RuleConfig::default()).unwrap().0
    }

    #[test]
    fn degree_report_of_n1() {
        let r = degree_report(&n1()).unwrap();
        let expected: BTreeMap<u64, u64> = [(4, 4), (2, 2), (1, 4)].into_iter().collect();
        assert_eq!(r.histogram, expected);
        assert_eq!(r.average_degree, ratio(24, 10));
        assert_eq!(r.cumulative[&1], BigRational::one());
        assert_eq!(r.cumulative[&4], ratio(4, 10));
        assert_eq!(r.classes[0].degree, 4);
    }

    #[test]
    fn degree_report_single_edge() {
        let g = LabeledGraph::new_seed(SeedKind::SingleEdge);
        let r = degree_report(&g).unwrap();
        assert_eq!(r.histogram, [(1, 2)].into_iter().collect());
        assert_eq!(r.average_degree, BigRational::one());
    }

    #[test]
    fn exact_power_law_slope() {
        // P_cum(k) = 4 k^-2 on k = 2^10 .. 2
        let mut pairs = vec![(1u64 << 10, 1u64)];
        for r in 2..=10u32 {
            pairs.push((1u64 << (11 - r), 3 * 4u64.pow(r - 2)));
        }
        let fit = powerlaw_fit(&rows(&pairs)).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12, "{}", fit.slope);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn fit_needs_three_classes() {
        let r = rows(&[(4, 1), (2, 3)]);
        assert_eq!(powerlaw_fit(&r), Err(MetricsError::TooFewClasses(2)));
    }

    #[test]
    fn zipf_unit_ratios_when_frequency_equals_cumulative() {
        let report = zipf_report(&rows(&[(1, 2)]), 1.0, ZipfWeighting::VertexCount).unwrap();
        assert_eq!(report.ratios, vec![1.0]);
        assert!(zipf_report(&rows(&[(1, 2)]), 0.0, ZipfWeighting::VertexCount).is_err());
    }

    #[test]
    fn zipf_frequencies_accumulate_from_the_top() {
        let classes = degree_report(&n1()).unwrap().classes;
        let r = zipf_report(&classes, 1.0, ZipfWeighting::DegreeMass).unwrap();
        let f: Vec<BigRational> = r.frequencies.iter().map(|f| f.frequency.clone()).collect();
        assert_eq!(f, vec![ratio(16, 24), ratio(20, 24), ratio(24, 24)]);
        assert!(r.ratios.iter().all(|x| x.is_finite() && *x > 0.0));
    }

    #[test]
    fn clustering_of_triangle() {
        let g = LabeledGraph::from_edge_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = clustering_report(&g);
        assert!(c.per_vertex.iter().all(is_unit));
        assert!(is_unit(&c.average));
    }

    #[test]
    fn clustering_hand_counts_on_n1() {
        let g = n1();
        let c = clustering_report(&g);
        for v in 0..g.vertex_count() {
            match g.vertices()[v].origin {
                crate::graph::Origin::Triangle => assert!(is_unit(&c.per_vertex[v])),
                crate::graph::Origin::Seed => assert_eq!(c.per_vertex[v], ratio(1, 6)),
                _ => assert!(c.per_vertex[v].is_zero()),
            }
        }
        // (2 * 1 + 4 * 1/6) / 10
        assert_eq!(c.average, ratio(8, 30));
    }

    #[test]
    fn distances_on_small_graphs() {
        let path = LabeledGraph::from_edge_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let r = distance_report(&path, DistanceMode::Exact).unwrap();
        assert_eq!(r.diameter, 2);
        assert_eq!(r.apl, AveragePathLength::Exact { value: ratio(4, 3) });
        let seed = LabeledGraph::new_seed(SeedKind::Rectangle);
        assert_eq!(distance_report(&seed, DistanceMode::Exact).unwrap().diameter, 2);
        assert_eq!(distance_report(&n1(), DistanceMode::Exact).unwrap().diameter, 4);
        assert_eq!(
            distance_report(&seed, DistanceMode::Sampled(1)),
            Err(MetricsError::TooFewSources(1))
        );
    }

    #[test]
    fn sampled_sources_are_strided() {
        assert_eq!(sample_sources(10, 3), vec![0, 4, 8]);
        assert_eq!(sample_sources(4, 10), vec![0, 1, 2, 3]);
        let g = generate_n(3, &RuleConfig::default()).unwrap().0;
        let exact = distance_report(&g, DistanceMode::Exact).unwrap();
        let sampled = distance_report(&g, DistanceMode::Sampled(8)).unwrap();
        assert!(sampled.diameter <= exact.diameter);
        assert!(matches!(sampled.apl, AveragePathLength::Sampled { sources: 8, .. }));
    }
}
