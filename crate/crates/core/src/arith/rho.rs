use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::primes::{is_prime, primes_up_to};
use super::spec::PseudoPolySpec;
use crate::error::{invalid, Result};

/// Largest prime accepted by [`rho`] (Montgomery arithmetic with `R = 2^32`
/// needs `p < 2^31`).
pub const MAX_RHO_PRIME: u64 = (1 << 31) - 1;

/// Histogram buckets `0..=RHO_CAP`; larger counts go to the overflow bucket.
pub const RHO_CAP: usize = 12;

/// Montgomery constants for an odd modulus `p < 2^31`.
#[derive(Clone, Copy)]
struct Mont {
    p: u32,
    neg_inv: u32,
    r: u32,
}

impl Mont {
    fn new(p: u32) -> Self {
        // Newton iteration for p^-1 mod 2^32
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        Mont {
            p,
            neg_inv: inv.wrapping_neg(),
            r: ((1u64 << 32) % p as u64) as u32,
        }
    }

    #[inline(always)]
    fn redc(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.neg_inv);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        u.min(u.wrapping_sub(self.p))
    }

    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        s.min(s.wrapping_sub(self.p))
    }
}

const LANES: usize = 8;

/// Zero counts of `F(x) mod p` over `0 <= x < p` for up to eight odd primes
/// at once. The lanes advance in lockstep over the common range so the
/// independent recurrences overlap in the pipeline.
fn rho_f_lanes(ps: &[u64]) -> Vec<u64> {
    let k = ps.len();
    let mut mont = [Mont::new(3); LANES];
    for (m, &p) in mont.iter_mut().zip(ps) {
        *m = Mont::new(p as u32);
    }
    // f = F(n) R, nt = n R (mod p); F(0) = 1 is never 0 mod p
    let mut f = [0u32; LANES];
    let mut nt = [0u32; LANES];
    let mut zeros = [0u64; LANES];
    for i in 0..k {
        f[i] = mont[i].r;
    }
    let common = ps.iter().copied().min().unwrap_or(0);
    for _ in 1..common {
        for i in 0..LANES {
            let m = &mont[i];
            nt[i] = m.add(nt[i], m.r);
            f[i] = m.add(m.redc(nt[i] as u64 * f[i] as u64), m.r);
            zeros[i] += (f[i] == 0) as u64;
        }
    }
    for i in 0..k {
        let m = &mont[i];
        for _ in common.max(1)..ps[i] {
            nt[i] = m.add(nt[i], m.r);
            f[i] = m.add(m.redc(nt[i] as u64 * f[i] as u64), m.r);
            zeros[i] += (f[i] == 0) as u64;
        }
    }
    zeros[..k].to_vec()
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if p > MAX_RHO_PRIME {
        return invalid(format!("p = {p} exceeds the supported bound 2^31 - 1"));
    }
    Ok(())
}

/// `#{x in [0, p) : spec(x) = 0 mod p}`.
pub fn rho(spec: &PseudoPolySpec, p: u64) -> Result<u64> {
    check_prime(p)?;
    Ok(rho_unchecked(spec, &[p])[0])
}

fn rho_unchecked(spec: &PseudoPolySpec, ps: &[u64]) -> Vec<u64> {
    match spec {
        PseudoPolySpec::BuiltinF => {
            let (two, odd): (Vec<u64>, Vec<u64>) = ps.iter().partition(|&&p| p == 2);
            if two.is_empty() {
                rho_f_lanes(&odd)
            } else {
                ps.iter()
                    .map(|&p| count_zeros(&spec.values_mod(p)))
                    .collect()
            }
        }
        PseudoPolySpec::Polynomial(_) => ps.iter().map(|&p| count_zeros(&spec.values_mod(p))).collect(),
    }
}

fn count_zeros(v: &[u32]) -> u64 {
    v.iter().filter(|&&x| x == 0).count() as u64
}

/// `(p, rho(p))` for every prime `p <= x`, in increasing `p`.
pub fn rho_table(spec: &PseudoPolySpec, x: u64) -> Result<Vec<(u64, u64)>> {
    if x < 2 {
        return invalid("the prime bound must be at least 2");
    }
    if x > MAX_RHO_PRIME {
        return invalid(format!("prime bound {x} exceeds 2^31 - 1"));
    }
    let primes = primes_up_to(x);
    let rhos: Vec<Vec<u64>> = primes
        .par_chunks(LANES)
        .map(|chunk| rho_unchecked(spec, chunk))
        .collect();
    Ok(primes.into_iter().zip(rhos.into_iter().flatten()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoRow {
    pub r: usize,
    pub count: u64,
    pub fraction: f64,
    pub target: f64,
    pub deviation: f64,
}

/// Distribution of `rho(p)` over `p <= bound` against Poisson(1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoHistogram {
    pub bound: u64,
    pub prime_count: u64,
    /// Rows `r = 0..=RHO_CAP`.
    pub rows: Vec<RhoRow>,
    /// Primes with `rho(p) > RHO_CAP`.
    pub overflow: u64,
}

/// Poisson(1) mass `e^-1 / r!`.
pub fn poisson1_mass(r: usize) -> f64 {
    (1..=r).fold((-1f64).exp(), |acc, i| acc / i as f64)
}

/// Buckets a per-prime table.
pub fn summarize_rho(table: &[(u64, u64)], bound: u64) -> RhoHistogram {
    let mut counts = [0u64; RHO_CAP + 1];
    let mut overflow = 0;
    for &(_, r) in table {
        match counts.get_mut(r as usize) {
            Some(c) => *c += 1,
            None => overflow += 1,
        }
    }
    let n = table.len() as u64;
    let rows = counts
        .iter()
        .enumerate()
        .map(|(r, &count)| {
            let fraction = count as f64 / n.max(1) as f64;
            let target = poisson1_mass(r);
            RhoRow {
                r,
                count,
                fraction,
                target,
                deviation: fraction - target,
            }
        })
        .collect();
    RhoHistogram {
        bound,
        prime_count: n,
        rows,
        overflow,
    }
}

/// [`rho_table`] followed by [`summarize_rho`].
pub fn rho_histogram(spec: &PseudoPolySpec, x: u64) -> Result<RhoHistogram> {
    Ok(summarize_rho(&rho_table(spec, x)?, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn small_primes() {
        let f = PseudoPolySpec::BuiltinF;
        assert_eq!(rho(&f, 2).unwrap(), 1);
        assert_eq!(rho(&f, 3).unwrap(), 0);
        assert_eq!(rho(&f, 5).unwrap(), 2);
        assert!(rho(&f, 4).is_err());
        assert!(rho(&f, 1).is_err());
    }

    #[test]
    fn montgomery_lanes_match_direct_loop() {
        let f = PseudoPolySpec::BuiltinF;
        let primes = primes_up_to(3000);
        let table = rho_table(&f, 3000).unwrap();
        for (&p, &(q, r)) in primes.iter().zip(&table) {
            assert_eq!(p, q);
            assert_eq!(r, count_zeros(&f.values_mod(p)), "p={p}");
        }
        // lanes of unequal length
        assert_eq!(
            rho_f_lanes(&[3, 101, 7, 1009]),
            [3u64, 101, 7, 1009].map(|p| count_zeros(&f.values_mod(p))).to_vec()
        );
        // redc(t) = t R^-1 mod p near the top of the range
        let big = 2_147_483_629u64;
        assert!(is_prime(big));
        let m = Mont::new(big as u32);
        for t in [1u64, big - 1, (big - 1) * (big - 1)] {
            let r = m.redc(t) as u128;
            assert_eq!((r << 32) % big as u128, t as u128 % big as u128);
        }
    }

    #[test]
    fn representative_independent() {
        let f = PseudoPolySpec::BuiltinF;
        for p in primes_up_to(50) {
            let shifted = (p..2 * p)
                .filter(|&x| (f.eval_int(x) % BigInt::from(p)).is_zero())
                .count() as u64;
            assert_eq!(shifted, rho(&f, p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn histogram_totals() {
        let h = rho_histogram(&PseudoPolySpec::BuiltinF, 100).unwrap();
        assert_eq!(h.prime_count, 25);
        assert_eq!(h.rows.iter().map(|r| r.count).sum::<u64>() + h.overflow, 25);
        let s: f64 = h.rows.iter().map(|r| r.fraction).sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert!((h.rows[0].target - 0.36787944117144233).abs() < 1e-15);
        let lin = rho_histogram(&PseudoPolySpec::Polynomial(vec![0, 1]), 50).unwrap();
        assert_eq!(lin.rows[1].count, 15);
    }
}
