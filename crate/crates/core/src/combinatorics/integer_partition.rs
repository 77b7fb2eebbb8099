use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::numbers::factorial;
use crate::error::{invalid, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("partition parts {parts:?} are not weakly decreasing"));
        }
        Ok(IntegerPartition { parts })
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    pub fn empty() -> Self {
        IntegerPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `(n - m, parts..)` where `m` is the weight; defined iff
    /// `n >= m + largest part`.
    pub fn padded(&self, n: u32) -> Result<IntegerPartition> {
        let m = self.weight();
        if n < m + self.largest() {
            return invalid(format!(
                "padding {self} to n = {n} needs n >= {}",
                m + self.largest()
            ));
        }
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        if n > m {
            parts.push(n - m);
        }
        parts.extend_from_slice(&self.parts);
        Ok(IntegerPartition { parts })
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> BigUint {
        let n = self.weight() as u64;
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts[j] as usize - i - 1;
                hooks *= (arm + leg + 1) as u64;
            }
        }
        factorial(n) / hooks
    }

    pub fn conjugate(&self) -> IntegerPartition {
        let cols = self.largest() as usize;
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        IntegerPartition { parts }
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, parts in decreasing order, listed in reverse
/// lexicographic order starting from `(n)`.
pub fn integer_partitions(n: u32) -> Vec<IntegerPartition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if rem == 0 {
            out.push(IntegerPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Cycle type of a permutation of `n` points: `multiplicities[i - 1]` is the
/// number of `i`-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    n: u32,
    multiplicities: Vec<u32>,
}

impl CycleType {
    /// Checks `sum_i i * m_i = n`; trailing zero multiplicities are dropped.
    pub fn new(n: u32, mut multiplicities: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return invalid("cycle types are defined for n >= 1");
        }
        let total: u64 = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum();
        if total != n as u64 {
            return invalid(format!("cycle multiplicities sum to {total}, not {n}"));
        }
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        Ok(CycleType { n, multiplicities })
    }

    /// Cycle type of the partition of `n` given by its parts (cycle lengths).
    pub fn from_partition(p: &IntegerPartition) -> Result<Self> {
        let n = p.weight();
        let mut mult = vec![0u32; p.largest() as usize];
        for &part in p.parts() {
            mult[part as usize - 1] += 1;
        }
        CycleType::new(n, mult)
    }

    /// Cycle type of a permutation given in one-line notation
    /// (`perm[i]` is the image of `i`).
    pub fn of_permutation(perm: &[u32]) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut mult: Vec<u32> = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i] as usize;
                len += 1;
            }
            if mult.len() < len {
                mult.resize(len, 0);
            }
            mult[len - 1] += 1;
        }
        CycleType {
            n: n as u32,
            multiplicities: mult,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of `i`-cycles (`i >= 1`).
    pub fn count(&self, i: usize) -> u32 {
        self.multiplicities.get(i - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn fixed_points(&self) -> u32 {
        self.count(1)
    }

    /// Cycle lengths as a partition of `n`.
    pub fn to_partition(&self) -> IntegerPartition {
        let mut parts = Vec::new();
        for (i, &m) in self.multiplicities.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, m as usize));
        }
        IntegerPartition { parts }
    }

    /// Size of the conjugacy class, `n! / prod_i (i^m_i * m_i!)`.
    pub fn class_size(&self) -> BigUint {
        let mut centralizer = BigUint::one();
        for (i, &m) in self.multiplicities.iter().enumerate() {
            centralizer *= BigUint::from(i as u64 + 1).pow(m) * factorial(m as u64);
        }
        factorial(self.n as u64) / centralizer
    }
}

/// Every cycle type of `S_n` with its class size. Class sizes sum to `n!`.
pub fn enumerate_cycle_types(n: u32) -> Result<Vec<(CycleType, BigUint)>> {
    if n == 0 {
        return invalid("enumerate_cycle_types needs n >= 1");
    }
    integer_partitions(n)
        .iter()
        .map(|p| {
            let ct = CycleType::from_partition(p)?;
            let size = ct.class_size();
            Ok((ct, size))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| integer_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(integer_partitions(4)[0].parts(), &[4]);
    }

    #[test]
    fn validation_and_padding() {
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
        assert!(IntegerPartition::new(vec![2, 0]).is_err());
        let lam = IntegerPartition::new(vec![2, 1]).unwrap();
        assert!(lam.padded(4).is_err());
        assert_eq!(lam.padded(5).unwrap().parts(), &[2, 2, 1]);
        assert_eq!(lam.padded(7).unwrap().parts(), &[4, 2, 1]);
        assert_eq!(IntegerPartition::empty().padded(3).unwrap().parts(), &[3]);
    }

    #[test]
    fn cycle_types_of_s4() {
        assert_eq!(enumerate_cycle_types(1).unwrap().len(), 1);
        let types = enumerate_cycle_types(4).unwrap();
        let mut sizes: Vec<u64> = types
            .iter()
            .map(|(_, s)| u64::try_from(s).unwrap())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let t5 = enumerate_cycle_types(5).unwrap();
        assert_eq!(t5.len(), 7);
        assert_eq!(t5.iter().map(|(_, s)| s).sum::<BigUint>(), BigUint::from(120u32));
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=15 {
            let total: BigUint = enumerate_cycle_types(n).unwrap().into_iter().map(|(_, s)| s).sum();
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn permutation_cycle_type() {
        // (0 1 2)(3 4)(5)
        let ct = CycleType::of_permutation(&[1, 2, 0, 4, 3, 5]);
        assert_eq!(ct.multiplicities(), &[1, 1, 1]);
        assert_eq!(ct.to_partition().parts(), &[3, 2, 1]);
        assert!(CycleType::new(4, vec![1, 1]).is_err());
    }

    #[test]
    fn hook_length() {
        let lam = IntegerPartition::new(vec![3, 2]).unwrap();
        assert_eq!(lam.num_standard_tableaux(), BigUint::from(5u32));
        let lam = IntegerPartition::new(vec![3, 2, 1]).unwrap();
        assert_eq!(lam.num_standard_tableaux(), BigUint::from(16u32));
    }
}
