//! Exact counting functions. Everything here returns arbitrary-precision
//! integers; nothing overflows.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub(crate) fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row
}

/// Bell numbers `B_0, .., B_k` from `B_{j+1} = sum_{r<=j} C(j, r) B_r`.
pub fn bell_table(k: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for j in 0..k {
        let row = binomial_row(j);
        let next = row
            .iter()
            .zip(&out)
            .fold(BigUint::zero(), |acc, (c, b)| acc + c * b);
        out.push(next);
    }
    out
}

/// Number of partitions of a `k`-element set.
pub fn bell(k: usize) -> BigUint {
    bell_table(k).pop().expect("table is nonempty")
}

/// Triangle `S(i, j)` for `0 <= j <= i <= k` of Stirling numbers of the second
/// kind.
pub fn stirling2_table(k: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for i in 1..=k {
        let prev = &rows[i - 1];
        let mut row = vec![BigUint::zero(); i + 1];
        for j in 1..=i {
            let stay = if j < i { &prev[j] * j } else { BigUint::zero() };
            row[j] = stay + &prev[j - 1];
        }
        rows.push(row);
    }
    rows
}

/// Number of partitions of a `k`-set into exactly `j` blocks.
pub fn stirling2(k: usize, j: usize) -> BigUint {
    if j > k {
        return BigUint::zero();
    }
    stirling2_table(k).swap_remove(k).swap_remove(j)
}

/// Number of partitions of a `k`-set into at most `n` blocks.
pub fn partitions_with_at_most(k: usize, n: usize) -> BigUint {
    stirling2_table(k)[k].iter().take(n + 1).sum()
}

/// Whether `q` is a power of a prime (`q >= 2`).
pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}

fn check_q(q: u64) -> Result<()> {
    if !is_prime_power(q) {
        return invalid(format!("q = {q} is not a prime power"));
    }
    Ok(())
}

/// Gaussian binomial `[m, j]_q`: the number of `j`-dimensional subspaces of
/// `F_q^m`, as `prod_{i<j} (q^(m-i) - 1) / (q^(i+1) - 1)`.
pub fn gauss_binomial(m: u32, j: u32, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if j > m {
        return invalid(format!("gauss_binomial: j = {j} exceeds m = {m}"));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..j {
        num *= q.pow(m - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    Ok(num / den)
}

/// Number of linear subspaces of `F_q^m` (all dimensions).
pub fn count_subspaces(m: u32, q: u64) -> Result<BigUint> {
    (0..=m).map(|j| gauss_binomial(m, j, q)).sum()
}

/// Number of nonempty affine subspaces of `F_q^m`:
/// `sum_j q^(m-j) [m, j]_q`.
///
/// The empty set is not counted.
pub fn count_affine_subspaces(m: u32, q: u64) -> Result<BigUint> {
    let qb = BigUint::from(q);
    (0..=m)
        .map(|j| Ok(qb.pow(m - j) * gauss_binomial(m, j, q)?))
        .sum()
}

/// Derangement numbers `!0, .., !n` from `!m = m * !(m-1) + (-1)^m`.
pub fn subfactorial_table(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = BigInt::one();
    out.push(BigUint::one());
    for m in 1..=n {
        cur = cur * m + if m % 2 == 0 { 1 } else { -1 };
        out.push(cur.to_biguint().expect("derangement numbers are nonnegative"));
    }
    out
}

pub fn subfactorial(n: usize) -> BigUint {
    subfactorial_table(n).pop().expect("table is nonempty")
}

/// Number of permutations of `S_n` with exactly `r` fixed points,
/// `C(n, r) * !(n - r)`.
pub fn rencontres(n: usize, r: usize) -> Result<BigUint> {
    if r > n {
        return invalid(format!("rencontres: r = {r} exceeds n = {n}"));
    }
    Ok(binomial(n as u64, r as u64) * subfactorial(n - r))
}

/// `rencontres(n, r)` for every `r` in `0..=n`.
pub fn rencontres_row(n: usize) -> Vec<BigUint> {
    let d = subfactorial_table(n);
    let c = binomial_row(n);
    (0..=n).map(|r| &c[r] * &d[n - r]).collect()
}
