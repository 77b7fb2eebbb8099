use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::distribution::EmpiricalDistribution;
use super::permutations::sample_permutation;
use super::rng::run_blocks;
use crate::combinatorics::{enumerate_cycle_types, factorial, CharacterEvaluator, CycleType, IntegerPartition};
use crate::error::{invalid, Result};

/// `(1/n!) sum_{sigma in S_n} chi_{lambda[n]}(sigma)^a`, summed over cycle
/// types, where `lambda[n] = (n - |lambda|, lambda)`.
pub fn character_moment_exact(lambda: &IntegerPartition, n: u32, a: u32) -> Result<BigRational> {
    character_moment_with(&mut CharacterEvaluator::new(), lambda, n, a)
}

/// As [`character_moment_exact`], reusing the caller's evaluator cache.
pub fn character_moment_with(
    eval: &mut CharacterEvaluator,
    lambda: &IntegerPartition,
    n: u32,
    a: u32,
) -> Result<BigRational> {
    let shape = lambda.padded(n)?;
    let mut sum = BigInt::zero();
    for (mu, size) in enumerate_cycle_types(n)? {
        let chi = eval.value(&shape, &mu)?;
        sum += BigInt::from(size) * num_traits::Pow::pow(chi, a);
    }
    Ok(BigRational::new(sum, factorial(n as u64).into()))
}

/// Exact moments along `n` and where they settle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stabilization {
    pub lambda: Vec<u32>,
    pub a: u32,
    /// `(n, moment)` for `n` from `|lambda| + lambda_1` to `n_max`.
    pub values: Vec<(u32, String)>,
    pub stable_value: String,
    /// Least `n` from which every computed moment equals the last one.
    pub observed_point: u32,
    /// Sufficient bound `4am - 1` with `m = |lambda|`.
    pub bound: i64,
}

impl Stabilization {
    pub fn within_bound(&self) -> bool {
        self.observed_point as i64 <= self.bound.max(self.values.first().map_or(0, |v| v.0 as i64))
    }
}

/// Computes `character_moment_exact(lambda, n, a)` for every admissible
/// `n <= n_max` and reports where the sequence becomes constant.
///
/// The observed point is only meaningful if `n_max` is comfortably above it;
/// callers normally pass something beyond `4am - 1`.
pub fn stabilize(lambda: &IntegerPartition, a: u32, n_max: u32) -> Result<(BigRational, Stabilization)> {
    let n_min = lambda.weight() + lambda.largest();
    let n_min = n_min.max(1);
    if n_max < n_min {
        return invalid(format!("n_max = {n_max} is below the first admissible n = {n_min}"));
    }
    let mut eval = CharacterEvaluator::new();
    let mut values = Vec::new();
    for n in n_min..=n_max {
        values.push((n, character_moment_with(&mut eval, lambda, n, a)?));
    }
    let last = values.last().expect("nonempty").1.clone();
    let observed_point = values
        .iter()
        .rev()
        .take_while(|(_, v)| *v == last)
        .last()
        .expect("last value matches itself")
        .0;
    let m = lambda.weight() as i64;
    Ok((
        last.clone(),
        Stabilization {
            lambda: lambda.parts().to_vec(),
            a,
            values: values.iter().map(|(n, v)| (*n, v.to_string())).collect(),
            stable_value: last.to_string(),
            observed_point,
            bound: 4 * a as i64 * m - 1,
        },
    ))
}

/// Histogram of `chi_{lambda[n]}(sigma)` over uniform `sigma` in `S_n`.
pub fn character_mc_experiment(
    lambda: &IntegerPartition,
    n: u32,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    let shape = lambda.padded(n)?;
    run_blocks(
        seed,
        trials,
        || (EmpiricalDistribution::new(seed), CharacterEvaluator::new()),
        |rng, (d, eval)| {
            let mu = CycleType::of_permutation(&sample_permutation(n as usize, rng));
            let chi = eval.value(&shape, &mu)?;
            let Some(v) = chi.to_i64() else {
                return invalid(format!("character value {chi} exceeds 64 bits"));
            };
            d.record(v);
            Ok(())
        },
        |a, b| a.0.merge(b.0),
    )
    .map(|(d, _)| d)
}
