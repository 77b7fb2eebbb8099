use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use super::rng::GENERATOR;
use crate::error::Result;
use crate::measures::EmpiricalMoments;

/// Histogram of an integer-valued statistic over `trials` draws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    pub histogram: BTreeMap<i64, u64>,
    pub trials: u64,
    pub seed: u64,
    pub generator: String,
}

impl EmpiricalDistribution {
    pub fn new(seed: u64) -> Self {
        EmpiricalDistribution {
            histogram: BTreeMap::new(),
            trials: 0,
            seed,
            generator: GENERATOR.to_string(),
        }
    }

    pub fn record(&mut self, value: i64) {
        *self.histogram.entry(value).or_insert(0) += 1;
        self.trials += 1;
    }

    pub fn merge(&mut self, other: EmpiricalDistribution) {
        for (v, c) in other.histogram {
            *self.histogram.entry(v).or_insert(0) += c;
        }
        self.trials += other.trials;
    }

    pub fn count(&self, value: i64) -> u64 {
        self.histogram.get(&value).copied().unwrap_or(0)
    }

    /// Empirical probability of `value` and its binomial standard error.
    pub fn probability(&self, value: i64) -> (f64, f64) {
        let n = self.trials.max(1) as f64;
        let p = self.count(value) as f64 / n;
        (p, (p * (1.0 - p) / n).sqrt())
    }

    /// `sum count * value^k / N`, exactly.
    pub fn moment(&self, k: u32) -> BigRational {
        let s: BigInt = self
            .histogram
            .iter()
            .map(|(&v, &c)| Pow::pow(BigInt::from(v), k) * c)
            .sum();
        if self.trials == 0 {
            return BigRational::zero();
        }
        BigRational::new(s, BigInt::from(self.trials))
    }

    /// Moment table `0..=max_order` with standard errors.
    pub fn moments(&self, max_order: usize) -> Result<EmpiricalMoments> {
        EmpiricalMoments::from_histogram(&self.histogram, max_order)
    }

    /// `value,count` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (v, c) in &self.histogram {
            let _ = writeln!(out, "{v},{c}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_moments() {
        let mut d = EmpiricalDistribution::new(1);
        for v in [0, 1, 1, 3] {
            d.record(v);
        }
        assert_eq!(d.trials, 4);
        assert_eq!(d.histogram.values().sum::<u64>(), d.trials);
        assert_eq!(d.moment(1), BigRational::new(5.into(), 4.into()));
        assert_eq!(d.moment(2), BigRational::new(11.into(), 4.into()));
        assert_eq!(d.to_csv(), "value,count\n0,1\n1,2\n3,1\n");
        let m = d.moments(2).unwrap();
        assert_eq!(m.table.get(2, 0).unwrap().value.re, 2.75);
        let mut e = EmpiricalDistribution::new(1);
        e.record(1);
        d.merge(e);
        assert_eq!(d.count(1), 3);
        assert_eq!(d.trials, 5);
    }
}
