//! Exact evaluators for the model's counting formulas, degree table,
//! clustering sums, spanning-tree products and the Möbius recurrence.

pub mod mobius;
pub mod trees;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PredictError;
use crate::exact::{rational_str, ExactCount};
use crate::generators::DegreeClassRow;

pub use mobius::{iterate_mobius, solve_mobius, MobiusRecurrence, MobiusSolution, MobiusValue};
pub use trees::{predict_spanning, SpanningPredictions, TreeValue};

/// A `tau`-term Fibonacci recurrence with explicit seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibSpec {
    pub tau: usize,
    pub seeds: Vec<BigInt>,
}

impl FibSpec {
    pub fn new(seeds: &[i64]) -> Self {
        FibSpec {
            tau: seeds.len(),
            seeds: seeds.iter().map(|&s| BigInt::from(s)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), PredictError> {
        if self.tau < 2 {
            return Err(PredictError::BadFibSpec(format!("tau = {} < 2", self.tau)));
        }
        if self.seeds.len() != self.tau {
            return Err(PredictError::BadFibSpec(format!(
                "{} seeds for tau = {}",
                self.seeds.len(),
                self.tau
            )));
        }
        Ok(())
    }
}

pub fn fibonacci(spec: &FibSpec, n: usize) -> Result<Vec<BigInt>, PredictError> {
    spec.validate()?;
    if n == 0 {
        return Err(PredictError::BadFibSpec("n must be at least 1".into()));
    }
    let mut out: Vec<BigInt> = spec.seeds.iter().take(n).cloned().collect();
    while out.len() < n {
        let next: BigInt = out[out.len() - spec.tau..].iter().sum();
        out.push(next);
    }
    Ok(out)
}

/// Star and rectangle increments at a tracked corner, indexed from step 1.
/// `adjusted` replaces the true `beta(1) = 0` with 1, which turns both
/// columns into Fibonacci sequences.
pub fn alpha_beta(t: u32, adjusted: bool) -> (Vec<u64>, Vec<u64>) {
    let t = t as usize;
    let mut alpha = Vec::with_capacity(t);
    let mut beta = Vec::with_capacity(t);
    if t == 0 {
        return (alpha, beta);
    }
    alpha.push(1);
    beta.push(u64::from(adjusted));
    for i in 1..t {
        alpha.push(beta[..i].iter().sum());
        beta.push(alpha[i - 1]);
    }
    (alpha, beta)
}

/// Which row of the increment table to read when the literal small rows and
/// the general row disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableConvention {
    /// `Delta(t) = 2 L(t-1)`, `Theta(t) = L(t-1)` for every `t >= 3`.
    #[default]
    GeneralRow,
    /// The printed values for `t <= 4`, general row above.
    RowLiteral,
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn pow_big(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Vertical-edge count `L(t)`.
pub fn vertical_edges(t: u32) -> BigInt {
    match t {
        0 => BigInt::zero(),
        1 => big(4),
        _ => (pow_big(4, t) - 4) / 3,
    }
}

/// Triangle increment `Delta(t)`.
pub fn delta(t: u32, convention: TableConvention) -> BigInt {
    match (t, convention) {
        (0, _) | (2, _) => BigInt::zero(),
        (1, _) => big(2),
        (4, TableConvention::RowLiteral) => big(8),
        _ => 2 * vertical_edges(t - 1),
    }
}

/// Rectangle increment `Theta(t)`.
pub fn theta(t: u32, convention: TableConvention) -> BigInt {
    match (t, convention) {
        (0, _) | (1, _) => BigInt::zero(),
        (2, _) => big(4),
        (4, TableConvention::RowLiteral) => big(12),
        _ => vertical_edges(t - 1),
    }
}

/// Both readings of one table cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionPair {
    pub general_row: ExactCount,
    pub row_literal: ExactCount,
    pub conflict: bool,
}

impl ConventionPair {
    fn new(f: impl Fn(TableConvention) -> BigInt) -> Result<Self, PredictError> {
        let g = to_count(f(TableConvention::GeneralRow), "table increment")?;
        let r = to_count(f(TableConvention::RowLiteral), "table increment")?;
        Ok(ConventionPair {
            conflict: g != r,
            general_row: g,
            row_literal: r,
        })
    }

    pub fn get(&self, convention: TableConvention) -> &ExactCount {
        match convention {
            TableConvention::GeneralRow => &self.general_row,
            TableConvention::RowLiteral => &self.row_literal,
        }
    }
}

fn to_count(v: BigInt, what: &'static str) -> Result<ExactCount, PredictError> {
    v.to_biguint().map(ExactCount).ok_or(PredictError::Negative(what))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedCounts {
    pub t: u32,
    pub vertices: ExactCount,
    pub edges: ExactCount,
    pub vertical_edges: ExactCount,
    pub delta: ConventionPair,
    pub theta: ConventionPair,
    /// `"hand-count"` for `t <= 2`, `"closed-form"` above.
    pub source: String,
}

pub(crate) fn vertices_big(t: u32) -> BigInt {
    match t {
        0 => big(4),
        1 => big(10),
        2 => big(28),
        _ => (17 * pow_big(4, t - 1) - pow_big(3, t) - 11) / 3,
    }
}

pub(crate) fn edges_big(t: u32) -> BigInt {
    match t {
        0 => big(4),
        1 => big(12),
        2 => big(40),
        _ => (28 * pow_big(4, t - 1) - 6 * pow_big(3, t - 1) - 22) / 3,
    }
}

/// Vertex and edge counts: the hand-counted table for `t <= 2`, the closed
/// form from `t = 3` on.
pub fn predict_counts(t: u32) -> Result<PredictedCounts, PredictError> {
    Ok(PredictedCounts {
        t,
        vertices: to_count(vertices_big(t), "|V|")?,
        edges: to_count(edges_big(t), "|E|")?,
        vertical_edges: to_count(vertical_edges(t), "L")?,
        delta: ConventionPair::new(|c| delta(t, c))?,
        theta: ConventionPair::new(|c| theta(t, c))?,
        source: if t <= 2 { "hand-count" } else { "closed-form" }.into(),
    })
}

/// Pseudofractal counts `((3^t + 3)/2, 3^t)`.
pub fn predict_n1(t: u32) -> (ExactCount, ExactCount) {
    let e = num_traits::pow(BigUint::from(3u32), t as usize);
    let v = (&e + 3u32) / 2u32;
    (ExactCount(v), ExactCount(e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTablePrediction {
    pub t: u32,
    pub rows: Vec<DegreeClassRow>,
    pub degree_mass: ExactCount,
    pub twice_edges: ExactCount,
    pub vertex_sum: ExactCount,
    pub vertices: ExactCount,
}

impl DegreeTablePrediction {
    pub fn degree_mass_matches(&self) -> bool {
        self.degree_mass == self.twice_edges
    }

    pub fn vertex_sum_matches(&self) -> bool {
        self.vertex_sum == self.vertices
    }
}

fn to_u64(v: &BigInt, what: &'static str) -> Result<u64, PredictError> {
    if v.is_negative() {
        return Err(PredictError::Negative(what));
    }
    v.to_u64().ok_or(PredictError::Overflow(what))
}

/// Degree classes in rank order: three fixed top ranks, one rank per
/// power-of-two degree down to 2, and the pendants.
pub fn predict_degree_table(t: u32) -> Result<DegreeTablePrediction, PredictError> {
    if t < 3 {
        return Err(PredictError::Domain {
            what: "degree table",
            t,
            min: 3,
        });
    }
    if t + 1 >= 64 {
        return Err(PredictError::Overflow("degree"));
    }
    let mut rows = vec![
        (1u64 << (t + 1), big(4)),
        (1u64 << t, big(2)),
        (1u64 << (t - 1), big(18)),
    ];
    for rank in 4..=t + 1 {
        let count = vertices_big(rank - 1) - vertices_big(rank - 2) - vertical_edges(rank - 1)
            + 2 * vertical_edges(rank - 2);
        rows.push((1u64 << (t + 2 - rank), count));
    }
    rows.push((1, vertical_edges(t)));
    let mut mass = BigInt::zero();
    let mut vsum = BigInt::zero();
    let mut out = Vec::with_capacity(rows.len());
    for (i, (degree, count)) in rows.into_iter().enumerate() {
        mass += &count * degree;
        vsum += &count;
        out.push(DegreeClassRow {
            rank: i + 1,
            degree,
            count: to_u64(&count, "degree class count")?,
        });
    }
    Ok(DegreeTablePrediction {
        t,
        rows: out,
        degree_mass: to_count(mass, "degree mass")?,
        twice_edges: to_count(2 * edges_big(t), "|E|")?,
        vertex_sum: to_count(vsum, "vertex sum")?,
        vertices: to_count(vertices_big(t), "|V|")?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringPrediction {
    pub t: u32,
    #[serde(with = "rational_str")]
    pub c1: BigRational,
    #[serde(with = "rational_str")]
    pub c2: BigRational,
    #[serde(with = "rational_str")]
    pub average: BigRational,
    /// Some sum in the displays had an empty index range and counted as 0.
    pub degenerate: bool,
}

struct Sums {
    degenerate: bool,
}

impl Sums {
    fn sum(&mut self, lo: i64, hi: i64, mut f: impl FnMut(&mut Self, i64) -> BigRational) -> BigRational {
        if lo > hi {
            self.degenerate = true;
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for i in lo..=hi {
            acc += f(self, i);
        }
        acc
    }
}

fn rpow(base: i64, exp: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b, (-exp) as usize).recip()
    }
}

fn rint(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Term-by-term evaluation of the two clustering sums, triangle-grown
/// vertices (`c1`) and rectangle vertices (`c2`), and their average over
/// `|V(t)|`. Uses the adjusted corner increments.
pub fn predict_clustering(t: u32, convention: TableConvention) -> Result<ClusteringPrediction, PredictError> {
    if t == 0 {
        return Err(PredictError::Domain {
            what: "clustering sums",
            t,
            min: 1,
        });
    }
    let ti = t as i64;
    let (alpha, _) = alpha_beta(t.max(2), true);
    let a = |i: i64| BigRational::from_integer(BigInt::from(alpha[(i - 1) as usize]));
    let d = |j: i64| rint(delta(j as u32, convention));
    let mut s = Sums { degenerate: false };

    let mut c1 = d(1) * s.sum(0, ti - 1, |_, i| rpow(3, i) * rpow(2, -(ti - 1 - i)));
    c1 += s.sum(3, ti, |s, j| {
        d(j) * s.sum(0, ti - j, |_, i| rpow(3, i) * rpow(2, -(ti - j - i)))
    });

    // sum_{i=0}^{top} 2^i + sum_{i=1}^{mid} alpha(i) sum_{j=i-1}^{low} 2^j
    let inner = |s: &mut Sums, top: i64, mid: i64, low: i64| {
        s.sum(0, top, |_, i| rpow(2, i)) + s.sum(1, mid, |s, i| a(i) * s.sum(i - 1, low, |_, j| rpow(2, j)))
    };
    let den = |m: i64| rpow(2, m) * (rpow(2, m + 1) - BigRational::one());
    let mut c2 = rint(big(4)) * inner(&mut s, ti - 1, ti - 2, ti - 3) / den(ti);
    c2 += rint(big(12)) * inner(&mut s, ti - 3, ti - 4, ti - 5) / den(ti - 1);
    c2 += s.sum(2, ti - 4, |s, k| {
        (rpow(4, k) - rint(big(4))) * inner(s, ti - k - 2, ti - k - 3, ti - k - 4) / den(ti - k - 1)
    });
    c2 += rint(big(3)) * (rpow(4, ti - 3) - rint(big(4))) / rint(big(28));
    c2 += (rpow(4, ti - 2) - rint(big(4))) / rint(big(6));

    let average = (&c1 + &c2) / rint(vertices_big(t));
    Ok(ClusteringPrediction {
        t,
        c1,
        c2,
        average,
        degenerate: s.degenerate,
    })
}

/// Predicted diameter `2t + 2`.
pub fn predict_diameter(t: u32) -> u64 {
    2 * t as u64 + 2
}

/// Everything the formulas say about `N(t)`, bundled for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionSet {
    pub t: u32,
    pub counts: PredictedCounts,
    pub degree_table: Option<DegreeTablePrediction>,
    pub clustering: Option<ClusteringPrediction>,
    pub diameter: u64,
    pub spanning: SpanningPredictions,
}

pub fn predict_all(t: u32, convention: TableConvention, max_bits: u64) -> Result<PredictionSet, PredictError> {
    Ok(PredictionSet {
        t,
        counts: predict_counts(t)?,
        degree_table: predict_degree_table(t).ok(),
        clustering: predict_clustering(t, convention).ok(),
        diameter: predict_diameter(t),
        spanning: predict_spanning(t, convention, max_bits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_to_f64;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(ints(&fibonacci(&FibSpec::new(&[1, 1]), 6).unwrap()), [1, 1, 2, 3, 5, 8]);
        assert_eq!(ints(&fibonacci(&FibSpec::new(&[1, 1, 2]), 4).unwrap()), [1, 1, 2, 4]);
        assert_eq!(ints(&fibonacci(&FibSpec::new(&[0, 0]), 5).unwrap()), [0; 5]);
        assert_eq!(ints(&fibonacci(&FibSpec::new(&[1, 1]), 1).unwrap()), [1]);
        assert!(fibonacci(&FibSpec::new(&[1]), 3).is_err());
        let bad = FibSpec {
            tau: 3,
            seeds: vec![BigInt::one()],
        };
        assert!(fibonacci(&bad, 3).is_err());
    }

    #[test]
    fn alpha_beta_table() {
        assert_eq!(alpha_beta(5, true), (vec![1, 1, 2, 3, 5], vec![1, 1, 1, 2, 3]));
        let (a, b) = alpha_beta(5, false);
        assert_eq!(b[0], 0);
        assert_eq!(a[..2], [1, 0]);
        let (a, b) = alpha_beta(20, true);
        for i in 2..20 {
            assert_eq!(a[i], a[i - 1] + a[i - 2]);
        }
        // beta(3) = 1 breaks the recurrence once; it holds from t = 4
        assert_ne!(b[2], b[1] + b[0]);
        for i in 3..20 {
            assert_eq!(b[i], b[i - 1] + b[i - 2]);
        }
    }

    #[test]
    fn counts() {
        let c = predict_counts(3).unwrap();
        assert_eq!((c.vertices, c.edges), (78u64.into(), 124u64.into()));
        assert_eq!(c.vertical_edges, 20u64.into());
        let c = predict_counts(4).unwrap();
        assert_eq!((c.vertices, c.edges), (332u64.into(), 536u64.into()));
        assert!(c.delta.conflict && c.theta.conflict);
        assert_eq!(c.theta.row_literal, 12u64.into());
        assert_eq!(c.theta.general_row, 20u64.into());
        assert!(!predict_counts(3).unwrap().theta.conflict);
        assert_eq!(predict_counts(1).unwrap().vertical_edges, 4u64.into());
        assert_eq!(predict_counts(2).unwrap().source, "hand-count");
    }

    #[test]
    fn n1_counts() {
        assert_eq!(predict_n1(1), (3u64.into(), 3u64.into()));
        assert_eq!(predict_n1(2), (6u64.into(), 9u64.into()));
        assert_eq!(predict_n1(3), (15u64.into(), 27u64.into()));
    }

    #[test]
    fn degree_table_rows() {
        let p = predict_degree_table(3).unwrap();
        assert_eq!(p.rows[3].degree, 2);
        assert_eq!(p.rows[3].count, 38);
        assert_eq!(p.rows.last().unwrap().count, 20);
        assert_eq!(p.rows.last().unwrap().rank, 5);
        assert_eq!(p.degree_mass, 248u64.into());
        assert!(p.degree_mass_matches());
        assert_eq!(p.vertex_sum, 82u64.into());
        assert!(predict_degree_table(2).is_err());
        for t in 3..=12 {
            let p = predict_degree_table(t).unwrap();
            assert_eq!(p.rows.len() as u32, t + 2);
            assert!(p.rows.windows(2).all(|w| w[0].degree == 2 * w[1].degree || w[1].degree == 1));
        }
    }

    #[test]
    fn clustering_trend() {
        let c5 = predict_clustering(5, TableConvention::GeneralRow).unwrap();
        assert!(c5.c1 > BigRational::zero());
        let avg = rational_to_f64(&c5.average);
        assert!(avg > 0.0 && avg < 1.0, "{avg}");
        let v: Vec<f64> = (6..=9)
            .map(|t| rational_to_f64(&predict_clustering(t, TableConvention::GeneralRow).unwrap().average))
            .collect();
        let diffs: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        assert!(diffs.windows(2).all(|w| w[1] < w[0]), "{diffs:?}");
        assert!(predict_clustering(3, TableConvention::GeneralRow).unwrap().degenerate);
        assert!(!predict_clustering(7, TableConvention::GeneralRow).unwrap().degenerate);
    }

    #[test]
    fn clustering_values_frozen() {
        // term-by-term evaluation, frozen before the build
        let expect = [
            (3, 0.383),
            (4, 0.407),
            (5, 0.439),
            (6, 0.466),
            (7, 0.487),
            (8, 0.502),
        ];
        for (t, want) in expect {
            let got = rational_to_f64(&predict_clustering(t, TableConvention::GeneralRow).unwrap().average);
            assert!((got - want).abs() < 5e-4, "t={t} got {got}");
        }
    }
}
