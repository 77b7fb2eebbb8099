use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::distribution::EmpiricalDistribution;
use super::rng::run_blocks;
use crate::combinatorics::{factorial, rencontres_row, stirling2_table};
use crate::error::{invalid, Result};
use crate::measures::{poisson_moments, ratio_to_f64};

/// Uniform permutation of `0..n` in one-line notation (Fisher–Yates).
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(rng);
    p
}

pub fn fix_count(perm: &[u32]) -> usize {
    perm.iter().enumerate().filter(|&(i, &v)| i as u32 == v).count()
}

/// `(l_1, .., l_imax)`: the number of `i`-cycles for each `i <= imax`.
pub fn cycle_counts(perm: &[u32], imax: usize) -> Vec<u32> {
    let mut counts = vec![0u32; imax];
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        if len <= imax {
            counts[len - 1] += 1;
        }
    }
    counts
}

/// `P(|Fix| = r) = rencontres(n, r) / n!` for `r = 0..=n`.
pub fn exact_fix_distribution(n: usize) -> Result<Vec<BigRational>> {
    if n == 0 {
        return invalid("exact_fix_distribution needs n >= 1");
    }
    let total = BigInt::from(factorial(n as u64));
    Ok(rencontres_row(n)
        .into_iter()
        .map(|c| BigRational::new(c.into(), total.clone()))
        .collect())
}

/// `E[|Fix|^k] = sum_{j <= n} S(k, j)`.
pub fn exact_fix_moment(k: usize, n: usize) -> Result<BigRational> {
    if n == 0 {
        return invalid("exact_fix_moment needs n >= 1");
    }
    let row = &stirling2_table(k)[k];
    let s: BigInt = row.iter().take(n + 1).map(|v| BigInt::from(v.clone())).sum();
    Ok(BigRational::from_integer(s))
}

/// `E[|Fix|^k]` summed over the exact law, the second route to
/// [`exact_fix_moment`].
pub fn fix_moment_from_law(k: usize, n: usize) -> Result<BigRational> {
    Ok(exact_fix_distribution(n)?
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (r, p)| {
            acc + p * BigRational::from_integer(Pow::pow(BigInt::from(r), k as u32))
        }))
}

/// Total variation distance between the law of `|Fix|` on `S_n` and
/// Poisson(1), both restricted to `0..=n`.
pub fn fix_tv_to_poisson(n: usize) -> Result<f64> {
    let law = exact_fix_distribution(n)?;
    let e_inv = inv_e(60);
    let mut fact = BigInt::one();
    let mut tv = BigRational::zero();
    for (r, p) in law.iter().enumerate() {
        if r > 0 {
            fact *= r;
        }
        let poisson = &e_inv / BigRational::from_integer(fact.clone());
        let d = p - poisson;
        tv += if d < BigRational::zero() { -d } else { d };
    }
    Ok(ratio_to_f64(&tv) / 2.0)
}

/// `sum_{j <= terms} (-1)^j / j!`, within `1/(terms+1)!` of `1/e`.
pub fn inv_e(terms: usize) -> BigRational {
    let mut fact = BigInt::one();
    let mut s = BigRational::zero();
    for j in 0..=terms {
        if j > 0 {
            fact *= j;
        }
        let t = BigRational::new(BigInt::one(), fact.clone());
        if j % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

/// Histogram of `|Fix|` over `trials` uniform permutations of `S_n`.
pub fn fix_experiment(n: usize, trials: u64, seed: u64) -> Result<EmpiricalDistribution> {
    if n == 0 {
        return invalid("perm-fix needs n >= 1");
    }
    run_blocks(
        seed,
        trials,
        || EmpiricalDistribution::new(seed),
        |rng, d| {
            d.record(fix_count(&sample_permutation(n, rng)) as i64);
            Ok(())
        },
        |a, b| a.merge(b),
    )
}

/// Mixed moment `E[prod_i l_i^{k_i}]` of the cycle counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointMoment {
    /// `k_1, .., k_J`.
    pub exponents: Vec<u32>,
    pub empirical: f64,
    pub stderr: f64,
    /// Value for independent Poisson(1/i) counts.
    pub limit: f64,
    pub limit_exact: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleExperiment {
    pub n: usize,
    pub imax: usize,
    /// Law of `l_i` at index `i - 1`.
    pub per_cycle: Vec<EmpiricalDistribution>,
    pub joint: Vec<JointMoment>,
}

/// Largest cycle length entering the joint moments.
pub const JOINT_MAX_CYCLE: usize = 4;
/// Largest total degree of the joint moments.
pub const JOINT_MAX_DEGREE: u32 = 4;

fn multi_indices(len: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=max_degree - used).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<u32>() >= 1);
    out.sort_by_key(|v| (v.iter().sum::<u32>(), std::cmp::Reverse(v.clone())));
    out
}

#[derive(Clone)]
struct CycleAcc {
    per_cycle: Vec<EmpiricalDistribution>,
    sums: Vec<u128>,
    squares: Vec<u128>,
}

/// Cycle counts `l_1..l_imax` of uniform permutations, with the joint
/// moments over `i <= min(imax, 4)` of total degree at most 4.
pub fn cycle_poisson_experiment(n: usize, trials: u64, imax: usize, seed: u64) -> Result<CycleExperiment> {
    if imax == 0 || imax > n {
        return invalid(format!("cycles needs 1 <= imax <= n, got imax = {imax}, n = {n}"));
    }
    let jmax = imax.min(JOINT_MAX_CYCLE);
    let indices = multi_indices(jmax, JOINT_MAX_DEGREE);
    let acc = run_blocks(
        seed,
        trials,
        || CycleAcc {
            per_cycle: vec![EmpiricalDistribution::new(seed); imax],
            sums: vec![0; indices.len()],
            squares: vec![0; indices.len()],
        },
        |rng, acc| {
            let counts = cycle_counts(&sample_permutation(n, rng), imax);
            for (d, &c) in acc.per_cycle.iter_mut().zip(&counts) {
                d.record(c as i64);
            }
            for (t, ks) in indices.iter().enumerate() {
                let v: u128 = ks
                    .iter()
                    .zip(&counts)
                    .map(|(&k, &c)| (c as u128).pow(k))
                    .product();
                acc.sums[t] += v;
                acc.squares[t] += v * v;
            }
            Ok(())
        },
        |a, b| {
            for (x, y) in a.per_cycle.iter_mut().zip(b.per_cycle) {
                x.merge(y);
            }
            for (x, y) in a.sums.iter_mut().zip(b.sums) {
                *x += y;
            }
            for (x, y) in a.squares.iter_mut().zip(b.squares) {
                *x += y;
            }
        },
    )?;

    let poisson: Vec<_> = (1..=jmax)
        .map(|i| poisson_moments(&BigRational::new(1.into(), BigInt::from(i)), JOINT_MAX_DEGREE as usize))
        .collect::<Result<_>>()?;
    let nt = BigInt::from(trials.max(1));
    let joint = indices
        .iter()
        .enumerate()
        .map(|(t, ks)| {
            let limit = ks.iter().enumerate().fold(BigRational::one(), |p, (i, &k)| {
                p * poisson[i].get(k as usize, 0).expect("degree within table")
            });
            let mean = BigRational::new(BigInt::from(acc.sums[t]), nt.clone());
            let var = BigRational::new(
                &nt * BigInt::from(acc.squares[t]) - BigInt::from(acc.sums[t]).pow(2u32),
                &nt * &nt,
            );
            JointMoment {
                exponents: ks.clone(),
                empirical: ratio_to_f64(&mean),
                stderr: (ratio_to_f64(&var).max(0.0) / trials.max(1) as f64).sqrt(),
                limit: ratio_to_f64(&limit),
                limit_exact: limit.to_string(),
            }
        })
        .collect();
    Ok(CycleExperiment {
        n,
        imax,
        per_cycle: acc.per_cycle,
        joint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randomlab::rng::RngSpec;

    fn all_perms(n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![];
        let mut p: Vec<u32> = (0..n as u32).collect();
        fn rec(k: usize, p: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut out);
        out
    }

    #[test]
    fn fix_moment_formulas_agree() {
        for n in 1..=10 {
            for k in 0..=8 {
                assert_eq!(exact_fix_moment(k, n).unwrap(), fix_moment_from_law(k, n).unwrap(), "n={n} k={k}");
            }
            assert_eq!(exact_fix_moment(1, n).unwrap(), BigRational::one());
        }
        assert_eq!(exact_fix_moment(2, 2).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(exact_fix_moment(4, 2).unwrap(), BigRational::from_integer(8.into()));
        let s2: u64 = all_perms(2).iter().map(|p| (fix_count(p) as u64).pow(4)).sum();
        assert_eq!(s2 / 2, 8);
    }

    #[test]
    fn identity_on_one_point() {
        let mut rng = RngSpec::new(0).rng();
        for _ in 0..10 {
            let p = sample_permutation(1, &mut rng);
            assert_eq!(p, vec![0]);
            assert_eq!(fix_count(&p), 1);
        }
    }

    #[test]
    fn cycle_counts_partition_n() {
        let mut rng = RngSpec::new(5).rng();
        for n in 1..30 {
            let p = sample_permutation(n, &mut rng);
            let c = cycle_counts(&p, n);
            let total: usize = c.iter().enumerate().map(|(i, &l)| (i + 1) * l as usize).sum();
            assert_eq!(total, n);
            assert_eq!(c[0] as usize, fix_count(&p));
        }
    }

    #[test]
    fn fix_zero_probability_n4() {
        let d = fix_experiment(4, 200_000, 11).unwrap();
        let (p, se) = d.probability(0);
        assert!((p - 9.0 / 24.0).abs() <= 4.0 * se, "p={p} se={se}");
    }

    #[test]
    fn tv_small() {
        let mut prev = f64::INFINITY;
        for n in 5..=15 {
            let tv = fix_tv_to_poisson(n).unwrap();
            assert!(tv < prev);
            prev = tv;
        }
        assert!(fix_tv_to_poisson(12).unwrap() < 1e-6);
    }

    /// Exact `E[l_1 l_2]` by enumerating `S_n`.
    #[test]
    fn joint_moment_oracle() {
        for n in 3..=7 {
            let perms = all_perms(n);
            let s: u64 = perms
                .iter()
                .map(|p| {
                    let c = cycle_counts(p, 2);
                    (c[0] * c[1]) as u64
                })
                .sum();
            let exact = s as f64 / perms.len() as f64;
            // l_1 l_2 has mean 1/2 once n >= 4
            if n >= 4 {
                assert_eq!(exact, 0.5, "n={n}");
            }
        }
        let e = cycle_poisson_experiment(8, 100_000, 3, 9).unwrap();
        let j = e.joint.iter().find(|j| j.exponents == vec![1, 1, 0]).unwrap();
        assert!((j.empirical - 0.5).abs() <= 4.0 * j.stderr);
        assert_eq!(j.limit, 0.5);
        assert_eq!(e.per_cycle.len(), 3);
        assert_eq!(e.joint.len(), 34);
    }
}
