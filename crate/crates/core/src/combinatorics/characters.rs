//! Irreducible characters of `S_n` by the Murnaghan–Nakayama rule.
//!
//! A shape is stored through its beta-set (first-column hook lengths).
//! Removing a border strip of length `r` moves one bead from position `b` to
//! `b - r`; the sign is `(-1)` to the number of beads jumped over. Cycles are
//! removed largest first, and once only 1-cycles remain the value is the
//! number of standard tableaux of the remaining shape.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::integer_partition::{CycleType, IntegerPartition};
use crate::error::{Error, Result};

/// Character evaluator with a memo table keyed on
/// `(remaining shape, remaining cycle lengths)`.
///
/// The cache lives inside the evaluator, so each thread should own its own
/// evaluator. Reusing one evaluator across many classes of the same `S_n`
/// is what makes full class sums over `n ~ 30` cheap.
#[derive(Debug, Default)]
pub struct CharacterEvaluator {
    cache: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl CharacterEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// `chi_lambda(mu)`. The weight of `lambda` must equal `mu.n()`.
    pub fn value(&mut self, lambda: &IntegerPartition, mu: &CycleType) -> Result<BigInt> {
        if lambda.weight() != mu.n() {
            return Err(Error::Mismatch(format!(
                "partition {lambda} has weight {}, cycle type is for n = {}",
                lambda.weight(),
                mu.n()
            )));
        }
        let cycles = mu.to_partition();
        Ok(self.eval(lambda.parts(), cycles.parts()))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn eval(&mut self, shape: &[u32], cycles: &[u32]) -> BigInt {
        match cycles.first() {
            None => return BigInt::one(),
            Some(1) => {
                let p = IntegerPartition::new(shape.to_vec()).expect("shape stays a partition");
                return BigInt::from(p.num_standard_tableaux());
            }
            Some(_) => {}
        }
        let key = (shape.to_vec(), cycles.to_vec());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let r = cycles[0];
        let rest = &cycles[1..];
        let len = shape.len() as u32;
        let beta: Vec<u32> = shape
            .iter()
            .enumerate()
            .map(|(i, &p)| p + len - 1 - i as u32)
            .collect();
        let mut total = BigInt::zero();
        for (i, &b) in beta.iter().enumerate() {
            if b < r {
                continue;
            }
            let target = b - r;
            if beta.contains(&target) {
                continue;
            }
            let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut next_beta = beta.clone();
            next_beta[i] = target;
            next_beta.sort_unstable_by(|a, b| b.cmp(a));
            let next_shape: Vec<u32> = next_beta
                .iter()
                .enumerate()
                .map(|(k, &x)| x - (len - 1 - k as u32))
                .filter(|&p| p > 0)
                .collect();
            let sub = self.eval(&next_shape, rest);
            if jumped % 2 == 0 {
                total += sub;
            } else {
                total -= sub;
            }
        }
        self.cache.insert(key, total.clone());
        total
    }
}

/// `chi_lambda(mu)` with a fresh evaluator.
pub fn character_value(lambda: &IntegerPartition, mu: &CycleType) -> Result<BigInt> {
    CharacterEvaluator::new().value(lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_cycle_types, integer_partitions};

    #[test]
    fn trivial_and_sign() {
        for n in 1..=8u32 {
            let triv = IntegerPartition::new(vec![n]).unwrap();
            let sign = IntegerPartition::new(vec![1; n as usize]).unwrap();
            for (mu, _) in enumerate_cycle_types(n).unwrap() {
                assert_eq!(character_value(&triv, &mu).unwrap(), BigInt::one());
                let even_cycles: u32 = mu
                    .multiplicities()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (i + 1) % 2 == 0)
                    .map(|(_, &m)| m)
                    .sum();
                let expected = if even_cycles.is_multiple_of(2) { 1 } else { -1 };
                assert_eq!(character_value(&sign, &mu).unwrap(), BigInt::from(expected));
            }
        }
    }

    #[test]
    fn standard_is_fix_minus_one() {
        for n in 2..=9u32 {
            let std = IntegerPartition::new(vec![n - 1, 1]).unwrap();
            for (mu, _) in enumerate_cycle_types(n).unwrap() {
                assert_eq!(
                    character_value(&std, &mu).unwrap(),
                    BigInt::from(mu.fixed_points() as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn weight_mismatch() {
        let lam = IntegerPartition::new(vec![2, 1]).unwrap();
        let mu = CycleType::new(4, vec![4]).unwrap();
        assert!(character_value(&lam, &mu).is_err());
    }

    #[test]
    fn orthogonality_and_degree_bound() {
        for n in 1..=6u32 {
            let classes = enumerate_cycle_types(n).unwrap();
            let shapes = integer_partitions(n);
            let mut ev = CharacterEvaluator::new();
            let table: Vec<Vec<BigInt>> = shapes
                .iter()
                .map(|l| classes.iter().map(|(mu, _)| ev.value(l, mu).unwrap()).collect())
                .collect();
            let order = BigInt::from(crate::combinatorics::factorial(n as u64));
            let id_col = classes
                .iter()
                .position(|(mu, _)| mu.fixed_points() == n)
                .unwrap();
            for (i, row) in table.iter().enumerate() {
                let deg = &row[id_col];
                assert_eq!(
                    deg,
                    &BigInt::from(shapes[i].num_standard_tableaux()),
                    "degree of {}",
                    shapes[i]
                );
                for v in row {
                    assert!(v.magnitude() <= deg.magnitude());
                }
                for (j, other) in table.iter().enumerate() {
                    let inner: BigInt = classes
                        .iter()
                        .zip(row.iter().zip(other))
                        .map(|((_, size), (a, b))| BigInt::from(size.clone()) * a * b)
                        .sum();
                    let expected = if i == j { order.clone() } else { BigInt::zero() };
                    assert_eq!(inner, expected, "n = {n}, rows {i}, {j}");
                }
            }
            // column orthogonality on the identity column: sum of squared degrees.
            let sq: BigInt = table.iter().map(|r| &r[id_col] * &r[id_col]).sum();
            assert_eq!(sq, order);
        }
    }

    #[test]
    fn s5_known_row() {
        // chi_(3,2) on classes (1^5), (2,1^3), (2^2,1), (3,1^2), (3,2), (4,1), (5)
        let lam = IntegerPartition::new(vec![3, 2]).unwrap();
        let classes: [(&[u32], i64); 7] = [
            (&[5], 5),
            (&[3, 1], 1),
            (&[1, 2], 1),
            (&[2, 0, 1], -1),
            (&[0, 1, 1], 1),
            (&[1, 0, 0, 1], -1),
            (&[0, 0, 0, 0, 1], 0),
        ];
        for (mult, v) in classes {
            let mu = CycleType::new(5, mult.to_vec()).unwrap();
            assert_eq!(character_value(&lam, &mu).unwrap(), BigInt::from(v), "{mult:?}");
        }
    }
}
