//! Exact integers, rationals and factored power products.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision nonnegative integer, serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactCount(pub BigUint);

impl ExactCount {
    pub fn zero() -> Self {
        ExactCount(BigUint::zero())
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        ExactCount(v)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for ExactCount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigUint::from_str(s)
            .map(ExactCount)
            .map_err(|e| format!("bad count `{s}`: {e}"))
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `p/q` (or `p` when `q = 1`).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = |e: &dyn fmt::Display| format!("bad rational `{s}`: {e}");
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| bad(&e))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| bad(&e))?;
        if d.is_zero() {
            return Err(format!("bad rational `{s}`: zero denominator"));
        }
        Ok(BigRational::new(n, d))
    } else if s.contains(['.', 'e', 'E']) {
        let f: f64 = s.parse().map_err(|e| bad(&e))?;
        BigRational::from_float(f).ok_or_else(|| format!("bad rational `{s}`: not finite"))
    } else {
        let n = BigInt::from_str(s).map_err(|e| bad(&e))?;
        Ok(BigRational::from_integer(n))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // Scale so huge numerators and denominators do not overflow to inf/inf.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    if nb < 1000 && db < 1000 {
        return r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    }
    let shift = nb.max(db) - 900;
    let n = r.numer() >> shift.max(0) as usize;
    let d = r.denom() >> shift.max(0) as usize;
    n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a [`BigRational`] as its `p/q` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A product `base_1^e_1 * base_2^e_2 * ...` over positive integer bases with
/// integer (possibly negative) exponents. Kept factored so that values whose
/// bit length runs into the millions stay cheap to build and compare.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PowerProduct {
    factors: BTreeMap<BigUint, BigInt>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct::default()
    }

    pub fn power(base: impl Into<BigUint>, exp: impl Into<BigInt>) -> Self {
        let mut p = PowerProduct::one();
        p.mul_power(base.into(), exp.into());
        p
    }

    fn mul_power(&mut self, base: BigUint, exp: BigInt) {
        if base.is_one() || exp.is_zero() {
            return;
        }
        let slot = self.factors.entry(base.clone()).or_insert_with(BigInt::zero);
        *slot += exp;
        if slot.is_zero() {
            self.factors.remove(&base);
        }
    }

    pub fn pow(&self, exp: &BigInt) -> Self {
        PowerProduct {
            factors: self
                .factors
                .iter()
                .filter(|_| !exp.is_zero())
                .map(|(b, e)| (b.clone(), e * exp))
                .collect(),
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (&BigUint, &BigInt)> {
        self.factors.iter()
    }

    pub fn log2(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| e.to_f64().unwrap_or(f64::INFINITY) * biguint_log2(b))
            .sum()
    }

    /// True when every prime in the product appears with a nonnegative
    /// exponent. Bases need not be coprime, so this checks after merging the
    /// exponents of 2 and 3 against the remaining (odd, non-multiple-of-3)
    /// cofactors that this crate builds.
    pub fn is_integer(&self) -> bool {
        let mut reduced: BTreeMap<BigUint, BigInt> = BTreeMap::new();
        for (b, e) in &self.factors {
            let mut rest = b.clone();
            for p in [2u32, 3] {
                let p = BigUint::from(p);
                let mut k = 0u64;
                while (&rest % &p).is_zero() {
                    rest /= &p;
                    k += 1;
                }
                if k > 0 {
                    *reduced.entry(p).or_insert_with(BigInt::zero) += e * BigInt::from(k);
                }
            }
            if !rest.is_one() {
                *reduced.entry(rest).or_insert_with(BigInt::zero) += e;
            }
        }
        reduced.values().all(|e| !e.is_negative())
    }

    /// Materializes the value as an exact rational.
    pub fn to_rational(&self) -> BigRational {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (b, e) in &self.factors {
            let k = e.magnitude().to_u32().expect("exponent too large to materialize");
            if e.is_negative() {
                den *= b.pow(k);
            } else {
                num *= b.pow(k);
            }
        }
        BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        )
    }

    /// Exact value if it fits under `max_bits`, otherwise only `log2`.
    pub fn evaluate(&self, max_bits: u64) -> Evaluated {
        let log2 = self.log2();
        let fits = self
            .factors
            .iter()
            .map(|(b, e)| e.magnitude().to_u64().map(|k| k.saturating_mul(b.bits())))
            .try_fold(0u64, |acc, x| x.map(|x| acc.saturating_add(x)))
            .is_some_and(|bits| bits <= max_bits);
        if !fits {
            return Evaluated::Log2 {
                log2,
                factored: self.to_string(),
            };
        }
        let r = self.to_rational();
        if r.is_integer() {
            Evaluated::Integer(ExactCount(r.to_integer().magnitude().clone()))
        } else {
            Evaluated::Rational(r)
        }
    }
}

fn biguint_log2(b: &BigUint) -> f64 {
    let bits = b.bits();
    if bits <= 1000 {
        return b.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (b >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

impl Mul for PowerProduct {
    type Output = PowerProduct;

    fn mul(mut self, rhs: PowerProduct) -> PowerProduct {
        self *= rhs;
        self
    }
}

impl MulAssign for PowerProduct {
    fn mul_assign(&mut self, rhs: PowerProduct) {
        for (b, e) in rhs.factors {
            self.mul_power(b, e);
        }
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(b, e)| format!("{b}^{e}")).collect();
        f.write_str(&parts.join("*"))
    }
}

/// A [`PowerProduct`] materialized as far as a bit budget allows.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluated {
    Integer(ExactCount),
    Rational(BigRational),
    Log2 { log2: f64, factored: String },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
enum EvaluatedRepr {
    Integer { value: ExactCount },
    Rational { value: String },
    Log2 { log2: f64, factored: String },
}

impl Serialize for Evaluated {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Evaluated::Integer(c) => EvaluatedRepr::Integer { value: c.clone() },
            Evaluated::Rational(r) => EvaluatedRepr::Rational {
                value: rational_to_string(r),
            },
            Evaluated::Log2 { log2, factored } => EvaluatedRepr::Log2 {
                log2: *log2,
                factored: factored.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Evaluated {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match EvaluatedRepr::deserialize(d)? {
            EvaluatedRepr::Integer { value } => Evaluated::Integer(value),
            EvaluatedRepr::Rational { value } => {
                Evaluated::Rational(parse_rational(&value).map_err(serde::de::Error::custom)?)
            }
            EvaluatedRepr::Log2 { log2, factored } => Evaluated::Log2 { log2, factored },
        })
    }
}

impl Evaluated {
    pub fn as_integer(&self) -> Option<&ExactCount> {
        match self {
            Evaluated::Integer(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Evaluated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluated::Integer(c) => write!(f, "{c}"),
            Evaluated::Rational(r) => f.write_str(&rational_to_string(r)),
            Evaluated::Log2 { log2, .. } => write!(f, "2^{log2:.3}"),
        }
    }
}
