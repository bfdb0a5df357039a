//! Spanning-tree products kept in factored form.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{theta, TableConvention};
use crate::exact::{Evaluated, ExactCount, PowerProduct};

/// Default bit budget above which integers are reported by `log2` only.
pub const DEFAULT_MAX_BITS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeValue {
    pub value: Evaluated,
    pub log2: f64,
    pub factored: String,
}

impl TreeValue {
    fn new(p: &PowerProduct, max_bits: u64) -> Self {
        TreeValue {
            value: p.evaluate(max_bits),
            log2: p.log2(),
            factored: p.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanningPredictions {
    pub t: u32,
    pub convention: TableConvention,
    /// Triangle-growth product, defined for `t >= 1`.
    pub s1: Option<TreeValue>,
    /// Rectangle-growth product.
    pub q: TreeValue,
    /// Total spanning-tree count, defined for `t >= 2`.
    pub total: Option<TreeValue>,
    /// Maximum leaf count, defined for `t >= 3`.
    pub max_leaves: Option<ExactCount>,
    /// Number of maximum-leaf trees; needs `total(t - 2)`, so `t >= 4`.
    pub mls_count: Option<TreeValue>,
    pub notes: Vec<String>,
}

fn pow3(i: u32) -> BigInt {
    num_traits::pow(BigInt::from(3u32), i as usize)
}

/// `sum_{i=0}^{t-2} 3^i (t-1-i)`.
fn weighted_threes(t: u32) -> BigInt {
    (0..t.saturating_sub(1)).map(|i| pow3(i) * (t - 1 - i)).sum()
}

/// `sum_{i=0}^{m-1} 3^i`.
fn threes(m: u32) -> BigInt {
    (pow3(m) - 1) / 2
}

/// `2^{3^{t-1}} (3/2)^t prod_{i=0}^{t-2} 2^{3^i} (3/2)^{3^i (t-i-1)}`.
pub fn s1_product(t: u32) -> Option<PowerProduct> {
    if t == 0 {
        return None;
    }
    let b = weighted_threes(t);
    let e2 = pow3(t - 1) - t + threes(t - 1) - &b;
    let e3 = b + t;
    Some(PowerProduct::power(2u32, e2) * PowerProduct::power(3u32, e3))
}

/// Rectangle product; the bracket `(3/2)^t + (3/2)^{2t}` is folded into
/// `3^t (2^t + 3^t) / 4^t`.
pub fn q_product(t: u32) -> PowerProduct {
    let a = threes(t);
    let b = weighted_threes(t);
    let e2 = 1 + 2 * a - 2 * &b - 2 * BigInt::from(t);
    let e3 = 2 * b + t;
    let cofactor = num_traits::pow(BigUint::from(2u32), t as usize) + num_traits::pow(BigUint::from(3u32), t as usize);
    PowerProduct::power(2u32, e2) * PowerProduct::power(3u32, e3) * PowerProduct::power(cofactor, 1)
}

/// `4^{Theta(t)} Q(t) Q(t-2)^4 prod_{i=1}^{t-3} Q(i)^{Theta(t-i)}`.
pub fn total_product(t: u32, convention: TableConvention) -> Option<PowerProduct> {
    if t < 2 {
        return None;
    }
    let mut p = PowerProduct::power(4u32, theta(t, convention)) * q_product(t) * q_product(t - 2).pow(&BigInt::from(4));
    for i in 1..t.saturating_sub(2) {
        p *= q_product(i).pow(&theta(t - i, convention));
    }
    Some(p)
}

/// `sum_{i=3}^{t-1} 3^{t-1-i} * 2 (4^{i-1} - 4)/3`.
pub fn leaf_sum(t: u32) -> BigInt {
    (3..t)
        .map(|i| pow3(t - 1 - i) * 2 * (num_traits::pow(BigInt::from(4u32), (i - 1) as usize) - 4) / 3)
        .sum()
}

pub fn max_leaves(t: u32) -> Option<BigInt> {
    if t < 3 {
        return None;
    }
    Some(17 * num_traits::pow(BigInt::from(4u32), (t - 2) as usize) + leaf_sum(t))
}

pub fn mls_product(t: u32, convention: TableConvention) -> Option<PowerProduct> {
    if t < 4 {
        return None;
    }
    let e3 = (num_traits::pow(BigInt::from(4u32), (t - 1) as usize) - 4) / 3;
    Some(PowerProduct::power(3u32, e3) * PowerProduct::power(2u32, leaf_sum(t)) * total_product(t - 2, convention)?)
}

pub fn predict_spanning(t: u32, convention: TableConvention, max_bits: u64) -> SpanningPredictions {
    let mut notes = Vec::new();
    if t < 1 {
        notes.push("triangle product needs t >= 1".to_string());
    }
    if t < 2 {
        notes.push("total count needs t >= 2 (Q(t-2))".to_string());
    }
    if t < 3 {
        notes.push("maximum leaf count needs t >= 3".to_string());
    }
    if t < 4 {
        notes.push("maximum-leaf tree count needs t >= 4 (total(t-2))".to_string());
    }
    if t == 4 && convention == TableConvention::RowLiteral {
        notes.push("Theta(4) read from the literal row (12), general row gives 20".to_string());
    }
    let psi = max_leaves(t).map(|v| {
        debug_assert!(!v.is_negative());
        ExactCount(v.magnitude().clone())
    });
    SpanningPredictions {
        t,
        convention,
        s1: s1_product(t).map(|p| TreeValue::new(&p, max_bits)),
        q: TreeValue::new(&q_product(t), max_bits),
        total: total_product(t, convention).map(|p| TreeValue::new(&p, max_bits)),
        max_leaves: psi,
        mls_count: mls_product(t, convention).map(|p| TreeValue::new(&p, max_bits)),
        notes,
    }
}

/// All products above are integers; exposed for property checks.
pub fn all_integral(t: u32, convention: TableConvention) -> bool {
    let mut ps = vec![q_product(t)];
    ps.extend(s1_product(t));
    ps.extend(total_product(t, convention));
    ps.extend(mls_product(t, convention));
    ps.iter().all(|p| p.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(p: &PowerProduct) -> u64 {
        use num_traits::ToPrimitive;
        p.to_rational().to_integer().to_u64().unwrap()
    }

    #[test]
    fn hand_values() {
        assert_eq!(int(&s1_product(1).unwrap()), 3);
        assert_eq!(int(&s1_product(2).unwrap()), 54);
        assert_eq!(int(&q_product(0)), 4);
        assert_eq!(int(&q_product(1)), 30);
        assert_eq!(max_leaves(3), Some(BigInt::from(68)));
        assert_eq!(max_leaves(4), Some(BigInt::from(280)));
        assert_eq!(int(&total_product(2, TableConvention::GeneralRow).unwrap()), 256 * 8424 * 256);
    }

    #[test]
    fn products_are_integers_up_to_six() {
        for t in 0..=6 {
            for c in [TableConvention::GeneralRow, TableConvention::RowLiteral] {
                assert!(all_integral(t, c), "t={t}");
            }
        }
    }

    #[test]
    fn large_values_fall_back_to_log2() {
        let p = predict_spanning(12, TableConvention::GeneralRow, DEFAULT_MAX_BITS);
        let total = p.total.unwrap();
        assert!(matches!(total.value, Evaluated::Log2 { .. }));
        assert!(total.log2 > 1e6);
        let small = predict_spanning(3, TableConvention::GeneralRow, DEFAULT_MAX_BITS);
        assert!(small.total.unwrap().value.as_integer().is_some());
        assert!(small.mls_count.is_none());
        assert_eq!(small.max_leaves, Some(68u64.into()));
    }
}
