use serde::{Deserialize, Serialize};

/// Sieve segment length in odd numbers.
const SEGMENT: usize = 1 << 16;

/// Primes up to a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRange {
    pub bound: u64,
    pub primes: Vec<u64>,
}

impl PrimeRange {
    pub fn new(bound: u64) -> Self {
        PrimeRange {
            bound,
            primes: primes_up_to(bound),
        }
    }

    /// `pi(bound)`.
    pub fn count(&self) -> usize {
        self.primes.len()
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= x`, by a segmented sieve over odd numbers.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let root = x.isqrt();
    let base: Vec<u64> = small_primes(root).into_iter().filter(|&p| p > 2).collect();
    let mut out = vec![2];
    // segment k covers odd numbers lo, lo+2, .., lo + 2(SEGMENT-1)
    let mut lo = 3u64;
    let mut mark = vec![false; SEGMENT];
    while lo <= x {
        let hi = (lo + 2 * (SEGMENT as u64 - 1)).min(if x.is_multiple_of(2) { x - 1 } else { x });
        let len = ((hi - lo) / 2 + 1) as usize;
        mark[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut i = ((start - lo) / 2) as usize;
            while i < len {
                mark[i] = true;
                i += p as usize;
            }
        }
        out.extend(
            mark[..len]
                .iter()
                .enumerate()
                .filter(|(_, &m)| !m)
                .map(|(i, _)| lo + 2 * i as u64),
        );
        lo = hi + 2;
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn sieve_matches_trial_division() {
        for x in [0u64, 1, 2, 3, 4, 10, 100, 131_073, 10_000] {
            let oracle: Vec<u64> = (0..=x).filter(|&n| trial_division(n)).collect();
            assert_eq!(primes_up_to(x), oracle, "x={x}");
        }
        for x in 0..300 {
            let oracle: Vec<u64> = (0..=x).filter(|&n| trial_division(n)).collect();
            assert_eq!(primes_up_to(x), oracle);
        }
    }

    #[test]
    fn prime_counts() {
        assert_eq!(PrimeRange::new(100).count(), 25);
        assert_eq!(PrimeRange::new(1_000_000).count(), 78_498);
    }

    #[test]
    fn miller_rabin() {
        for n in 0..5_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n={n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}
