use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use super::spec::PseudoPolySpec;
use crate::error::{invalid, Result};
use crate::guard;
use crate::measures::{CompensatedSum, EmpiricalMoments, MixedAccumulator};
use crate::randomlab::run_blocks;

/// Largest prime for which the length-`p` root-of-unity table is built.
pub const MAX_EXPSUM_PRIME: u64 = 1 << 28;

/// `e(v/p)` for `v` in `0..p`.
pub fn roots_of_unity(p: u64) -> Vec<Complex64> {
    let step = std::f64::consts::TAU / p as f64;
    (0..p)
        .map(|v| {
            let (s, c) = (v as f64 * step).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

fn check(p: u64) -> Result<()> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if p > MAX_EXPSUM_PRIME {
        return invalid(format!("p = {p} exceeds the supported bound 2^28"));
    }
    Ok(())
}

fn w_from_values(values: &[u32], a: u64, table: &[Complex64]) -> Complex64 {
    let p = table.len() as u64;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for &v in values {
        let z = table[(a * v as u64 % p) as usize];
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value()) / (p as f64).sqrt()
}

/// `W(a; p) = p^{-1/2} sum_{x mod p} e(a spec(x) / p)` by direct summation.
pub fn expsum_w(spec: &PseudoPolySpec, p: u64, a: u64) -> Result<Complex64> {
    check(p)?;
    if a.is_multiple_of(p) {
        return invalid("a must be nonzero mod p");
    }
    Ok(w_from_values(&spec.values_mod(p), a % p, &roots_of_unity(p)))
}

/// How the average over `a` is taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpsumMode {
    /// Every `a` in `1..p`.
    Exact,
    /// `count` uniform draws of `a` in `1..p`.
    Sampled { count: u64, seed: u64 },
}

/// Mixed moments of `W(a; p)` over `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpsumMoments {
    pub spec: String,
    pub p: u64,
    pub mode: ExpsumMode,
    /// Exact mode reports zero standard errors: it is the full average.
    pub moments: EmpiricalMoments,
}

/// `c[v] = #{x : spec(x) = v mod p}`.
pub fn value_counts(spec: &PseudoPolySpec, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; p as usize];
    for v in spec.values_mod(p) {
        c[v as usize] += 1;
    }
    c
}

/// `(1/(p-1)) sum_{a != 0} |W(a)|^2 = (p sum_v c[v]^2 - p^2) / (p (p-1))`.
pub fn second_moment_identity(spec: &PseudoPolySpec, p: u64) -> Result<BigRational> {
    check(p)?;
    let s: BigInt = value_counts(spec, p).iter().map(|&c| BigInt::from(c) * c).sum();
    let pb = BigInt::from(p);
    Ok(BigRational::new(&pb * s - &pb * &pb, &pb * (p - 1)))
}

/// Mixed moments `(1/(p-1)) sum_{a != 0} W^a conj(W)^b` (exact) or their
/// Monte Carlo estimate over sampled `a` (sampled).
pub fn expsum_moments(
    spec: &PseudoPolySpec,
    p: u64,
    max_order: usize,
    mode: &ExpsumMode,
) -> Result<ExpsumMoments> {
    check(p)?;
    let table = roots_of_unity(p);
    let moments = match mode {
        ExpsumMode::Exact => {
            guard::check("exact exponential-sum prime", p as u128, guard::MAX_EXACT_EXPSUM_PRIME as u128)?;
            // W(a) = p^{-1/2} sum_v c[v] e(av/p) over the support of c
            let support: Vec<(u64, f64)> = value_counts(spec, p)
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c > 0)
                .map(|(v, c)| (v as u64, c as f64))
                .collect();
            let scale = (p as f64).sqrt();
            let ws: Vec<Complex64> = (1..p)
                .into_par_iter()
                .map(|a| {
                    let mut re = CompensatedSum::default();
                    let mut im = CompensatedSum::default();
                    for &(v, c) in &support {
                        let z = table[(a * v % p) as usize];
                        re.add(c * z.re);
                        im.add(c * z.im);
                    }
                    Complex64::new(re.value(), im.value()) / scale
                })
                .collect();
            let mut acc = MixedAccumulator::new(max_order);
            for w in ws {
                acc.push(w);
            }
            let mut m = acc.finish();
            m.table = m.table.map(|e| crate::measures::Estimate {
                value: e.value,
                stderr: 0.0,
            });
            m
        }
        ExpsumMode::Sampled { count, seed } => {
            if *count == 0 {
                return invalid("sampled mode needs at least one draw");
            }
            let values = spec.values_mod(p);
            run_blocks(
                *seed,
                *count,
                || MixedAccumulator::new(max_order),
                |rng, acc| {
                    let a = rng.random_range(1..p);
                    acc.push(w_from_values(&values, a, &table));
                    Ok(())
                },
                |x, y| x.merge(&y),
            )?
            .finish()
        }
    };
    Ok(ExpsumMoments {
        spec: spec.to_string(),
        p,
        mode: mode.clone(),
        moments,
    })
}
