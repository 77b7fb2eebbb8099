use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// The integer sequence whose reductions mod `p` are studied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PseudoPolySpec {
    /// `F(n) = sum_{k<=n} n!/k!`, evaluated as `F(n) = n F(n-1) + 1`, `F(0) = 1`.
    BuiltinF,
    /// Integer polynomial, coefficients by increasing degree.
    Polynomial(Vec<i64>),
}

impl PseudoPolySpec {
    /// Exact value at `n`.
    pub fn eval_int(&self, n: u64) -> BigInt {
        match self {
            PseudoPolySpec::BuiltinF => {
                let mut f = BigInt::one();
                for k in 1..=n {
                    f = f * k + 1;
                }
                f
            }
            PseudoPolySpec::Polynomial(c) => {
                let x = BigInt::from(n);
                c.iter().rev().fold(BigInt::zero(), |acc, &a| acc * &x + a)
            }
        }
    }

    /// Exact values at `0..=n`.
    pub fn sequence(&self, n: u64) -> Vec<BigInt> {
        match self {
            PseudoPolySpec::BuiltinF => {
                let mut out = Vec::with_capacity(n as usize + 1);
                let mut f = BigInt::one();
                out.push(f.clone());
                for k in 1..=n {
                    f = f * k + 1;
                    out.push(f.clone());
                }
                out
            }
            PseudoPolySpec::Polynomial(_) => (0..=n).map(|k| self.eval_int(k)).collect(),
        }
    }

    /// `spec(x) mod p` for every `x` in `0..p`.
    pub fn values_mod(&self, p: u64) -> Vec<u32> {
        assert!(p >= 2 && p <= u32::MAX as u64, "modulus out of range");
        let mut out = Vec::with_capacity(p as usize);
        match self {
            PseudoPolySpec::BuiltinF => {
                let mut f = 1 % p;
                out.push(f as u32);
                for n in 1..p {
                    f = (n * f + 1) % p;
                    out.push(f as u32);
                }
            }
            PseudoPolySpec::Polynomial(c) => {
                let cm: Vec<u64> = c.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect();
                for x in 0..p {
                    let v = cm.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % p);
                    out.push(v as u32);
                }
            }
        }
        out
    }
}

impl fmt::Display for PseudoPolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudoPolySpec::BuiltinF => write!(f, "F"),
            PseudoPolySpec::Polynomial(c) => {
                let s: Vec<String> = c.iter().map(i64::to_string).collect();
                write!(f, "poly:{}", s.join(","))
            }
        }
    }
}

impl FromStr for PseudoPolySpec {
    type Err = Error;

    /// `F` (or `builtin-F`) for the builtin sequence, `poly:c0,c1,..` for a
    /// polynomial with ascending coefficients.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "F" || s.eq_ignore_ascii_case("builtin-f") {
            return Ok(PseudoPolySpec::BuiltinF);
        }
        let Some(body) = s.strip_prefix("poly:") else {
            return invalid(format!("unknown spec {s:?}; use F or poly:c0,c1,..."));
        };
        let coeffs = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .or_else(|_| invalid(format!("bad polynomial coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PseudoPolySpec::Polynomial(coeffs))
    }
}
