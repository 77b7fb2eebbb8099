use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::spec::PseudoPolySpec;

/// Outcome of the divisibility check `(m - n) | (a_m - a_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallReport {
    pub bound: u64,
    pub holds: bool,
    /// First failing `(m, n)`, scanning `m` upwards and `n` from 0.
    pub first_failure: Option<(u64, u64)>,
}

/// Checks `(m - n) | (a_m - a_n)` for all `0 <= n < m < values.len()`.
pub fn hall_check_sequence(values: &[BigInt]) -> Option<(u64, u64)> {
    for m in 1..values.len() {
        for n in 0..m {
            if !((&values[m] - &values[n]) % BigInt::from(m - n)).is_zero() {
                return Some((m as u64, n as u64));
            }
        }
    }
    None
}

/// Whether `spec` is a pseudopolynomial on `0..=bound`.
pub fn hall_check(spec: &PseudoPolySpec, bound: u64) -> HallReport {
    let first_failure = hall_check_sequence(&spec.sequence(bound));
    HallReport {
        bound,
        holds: first_failure.is_none(),
        first_failure,
    }
}

/// `(m - n) | (a_m - a_n)` for one pair.
pub fn hall_pair(values: &[BigInt], m: usize, n: usize) -> bool {
    ((&values[m] - &values[n]) % BigInt::from(m as i64 - n as i64)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::factorial;

    #[test]
    fn builtin_and_polynomials() {
        assert!(hall_check(&PseudoPolySpec::BuiltinF, 200).holds);
        assert!(hall_check(&PseudoPolySpec::Polynomial(vec![7, -3, 0, 5, 1]), 100).holds);
        assert!(hall_check(&PseudoPolySpec::Polynomial(vec![]), 10).holds);
    }

    #[test]
    fn factorials_fail() {
        let fact: Vec<BigInt> = (0..=10u64).map(|n| factorial(n).into()).collect();
        assert_eq!(hall_check_sequence(&fact), Some((2, 0)));
        assert!(!hall_pair(&fact, 3, 1));
        assert!(hall_pair(&fact, 3, 2));
    }
}
