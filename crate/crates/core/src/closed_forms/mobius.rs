//! Closed-form solution of `a_{n+1} = (p a_n + q) / (r a_n + s)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::MobiusError;
use crate::exact::{rational_str, rational_to_f64};

/// Orbits up to this length are checked for the pole by exact iteration.
pub const EXACT_POLE_CHECK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusRecurrence {
    #[serde(with = "rational_str")]
    pub p: BigRational,
    #[serde(with = "rational_str")]
    pub q: BigRational,
    #[serde(with = "rational_str")]
    pub r: BigRational,
    #[serde(with = "rational_str")]
    pub s: BigRational,
    #[serde(with = "rational_str")]
    pub a1: BigRational,
}

impl MobiusRecurrence {
    pub fn from_ints(p: i64, q: i64, r: i64, s: i64, a1: i64) -> Self {
        let f = |v: i64| BigRational::from_integer(BigInt::from(v));
        MobiusRecurrence {
            p: f(p),
            q: f(q),
            r: f(r),
            s: f(s),
            a1: f(a1),
        }
    }

    pub fn validate(&self) -> Result<(), MobiusError> {
        if self.r.is_zero() {
            return Err(MobiusError::ZeroR);
        }
        if (&self.p * &self.s - &self.q * &self.r).is_zero() {
            return Err(MobiusError::Singular);
        }
        Ok(())
    }

    fn pole(&self) -> BigRational {
        -(&self.s / &self.r)
    }

    /// `(s - p)^2 + 4 r q`, the discriminant of `r x^2 + (s - p) x - q`.
    pub fn discriminant(&self) -> BigRational {
        let d = &self.s - &self.p;
        &d * &d + BigRational::from_integer(BigInt::from(4)) * &self.r * &self.q
    }

    fn step(&self, a: &BigRational) -> BigRational {
        (&self.p * a + &self.q) / (&self.r * a + &self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MobiusValue {
    Exact {
        #[serde(with = "rational_str")]
        value: BigRational,
    },
    Approx {
        value: f64,
    },
}

impl MobiusValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            MobiusValue::Exact { value } => rational_to_f64(value),
            MobiusValue::Approx { value } => *value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootBranch {
    Distinct,
    Repeated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobiusSolution {
    pub n: usize,
    pub value: MobiusValue,
    pub branch: RootBranch,
    /// Roots as floats, `(re, im)`; `lambda` takes the `+` square root.
    pub lambda: (f64, f64),
    pub mu: (f64, f64),
    /// Whether the orbit was checked against the pole exactly.
    pub pole_checked: bool,
}

/// Direct exact iteration `a_1, ..., a_n`.
pub fn iterate_mobius(rec: &MobiusRecurrence, n: usize) -> Result<Vec<BigRational>, MobiusError> {
    rec.validate()?;
    if n == 0 {
        return Err(MobiusError::ZeroIndex);
    }
    let pole = rec.pole();
    let mut out = Vec::with_capacity(n);
    out.push(rec.a1.clone());
    for k in 1..n {
        let prev = &out[k - 1];
        if *prev == pole {
            return Err(MobiusError::Pole(k));
        }
        let next = rec.step(prev);
        out.push(next);
    }
    Ok(out)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

fn c64(r: &BigRational) -> Complex64 {
    Complex64::new(rational_to_f64(r), 0.0)
}

pub fn solve_mobius(rec: &MobiusRecurrence, n: usize) -> Result<MobiusSolution, MobiusError> {
    rec.validate()?;
    if n == 0 {
        return Err(MobiusError::ZeroIndex);
    }
    let pole_checked = n <= EXACT_POLE_CHECK;
    if pole_checked {
        iterate_mobius(rec, n)?;
    }
    let two_r = BigRational::from_integer(BigInt::from(2)) * &rec.r;
    let disc = rec.discriminant();
    let pm = &rec.p - &rec.s;
    let steps = (n - 1) as i32;

    if disc.is_zero() {
        let lambda = &pm / &two_r;
        let k = &two_r / (&rec.p + &rec.s);
        let d = &rec.a1 - &lambda;
        let den = BigRational::one() + &k * BigRational::from_integer(BigInt::from(n - 1)) * &d;
        if den.is_zero() {
            return Err(MobiusError::Pole(n - 1));
        }
        let l = rational_to_f64(&lambda);
        return Ok(MobiusSolution {
            n,
            value: MobiusValue::Exact {
                value: &lambda + d / den,
            },
            branch: RootBranch::Repeated,
            lambda: (l, 0.0),
            mu: (l, 0.0),
            pole_checked,
        });
    }

    if let Some(root) = rational_sqrt(&disc) {
        let lambda = (&pm + &root) / &two_r;
        let mu = (&pm - &root) / &two_r;
        if rec.a1 == mu {
            return Err(MobiusError::Degenerate);
        }
        let rho = (&rec.p - &lambda * &rec.r) / (&rec.p - &mu * &rec.r);
        let rp = num_traits::pow(rho, n - 1);
        let dl = &rec.a1 - &lambda;
        let dm = &rec.a1 - &mu;
        let den = &dl * &rp - &dm;
        if den.is_zero() {
            return Err(MobiusError::Pole(n - 1));
        }
        let value = (&mu * &dl * &rp - &lambda * &dm) / den;
        return Ok(MobiusSolution {
            n,
            value: MobiusValue::Exact { value },
            branch: RootBranch::Distinct,
            lambda: (rational_to_f64(&lambda), 0.0),
            mu: (rational_to_f64(&mu), 0.0),
            pole_checked,
        });
    }

    // irrational or complex roots: evaluate in floating point
    let sq = c64(&disc).sqrt();
    let (p, r, a1) = (c64(&rec.p), c64(&rec.r), c64(&rec.a1));
    let tr = c64(&two_r);
    let lambda = (c64(&pm) + sq) / tr;
    let mu = (c64(&pm) - sq) / tr;
    let rho = (p - lambda * r) / (p - mu * r);
    let rp = rho.powi(steps);
    let (dl, dm) = (a1 - lambda, a1 - mu);
    let value = (mu * dl * rp - lambda * dm) / (dl * rp - dm);
    Ok(MobiusSolution {
        n,
        value: MobiusValue::Approx { value: value.re },
        branch: RootBranch::Distinct,
        lambda: (lambda.re, lambda.im),
        mu: (mu.re, mu.im),
        pole_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn telescoping_one_over_n() {
        let rec = MobiusRecurrence::from_ints(1, 0, 1, 1, 1);
        let sol = solve_mobius(&rec, 7).unwrap();
        assert_eq!(sol.value, MobiusValue::Exact { value: q(1, 7) });
        assert_eq!(sol.branch, RootBranch::Repeated);
        assert_eq!(iterate_mobius(&rec, 7).unwrap()[6], q(1, 7));
    }

    #[test]
    fn fixed_point_is_stationary() {
        // x = (3x + 2)/(x + 2) has roots 2 and -1
        let mut rec = MobiusRecurrence::from_ints(3, 2, 1, 2, 2);
        for n in 1..8 {
            assert_eq!(solve_mobius(&rec, n).unwrap().value, MobiusValue::Exact { value: q(2, 1) });
        }
        rec.a1 = q(-1, 1);
        assert_eq!(solve_mobius(&rec, 3), Err(MobiusError::Degenerate));
    }

    #[test]
    fn rational_roots_match_iteration() {
        let rec = MobiusRecurrence::from_ints(2, 1, 1, 2, 0);
        let sol = solve_mobius(&rec, 5).unwrap();
        assert_eq!(sol.value, MobiusValue::Exact {
                value: iterate_mobius(&rec, 5).unwrap()[4].clone()
            });
    }

    #[test]
    fn complex_roots_match_iteration() {
        // x^2 + 1 = 0
        let rec = MobiusRecurrence::from_ints(1, -1, 1, 1, 3);
        for n in 1..=12 {
            let sol = solve_mobius(&rec, n).unwrap();
            assert!(matches!(sol.value, MobiusValue::Approx { .. }));
            let direct = rational_to_f64(&iterate_mobius(&rec, n).unwrap()[n - 1]);
            assert!((sol.value.as_f64() - direct).abs() < 1e-12 * direct.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn preconditions_and_pole() {
        assert_eq!(
            solve_mobius(&MobiusRecurrence::from_ints(1, 0, 0, 1, 1), 2),
            Err(MobiusError::ZeroR)
        );
        assert_eq!(
            solve_mobius(&MobiusRecurrence::from_ints(1, 1, 1, 1, 1), 2),
            Err(MobiusError::Singular)
        );
        // a1 = -s/r immediately
        assert_eq!(
            solve_mobius(&MobiusRecurrence::from_ints(1, 1, 1, 2, -2), 3),
            Err(MobiusError::Pole(1))
        );
        assert_eq!(
            solve_mobius(&MobiusRecurrence::from_ints(1, 0, 1, 1, 1), 0),
            Err(MobiusError::ZeroIndex)
        );
    }
}
