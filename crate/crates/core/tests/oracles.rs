//! Library results against brute-force computations written independently
//! of the library code paths.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use tel_core::arith::{expsum_w, hall_check_sequence, is_prime, primes_up_to, rho_table, PseudoPolySpec};
use tel_core::category::{gram_rank_at, hom_dim_generic};
use tel_core::combinatorics::{bell, stirling2, IntegerPartition};
use tel_core::measures::poisson_moments;
use tel_core::randomlab::{
    character_moment_exact, cycle_poisson_experiment, exact_aff_fix_law, exact_fix_moment, exact_gl_fix_law,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// All permutations of `0..n` by Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = vec![];
    for s in 0..p.len() {
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Number of set partitions of an `n`-set, counted by assigning each
/// element to an existing block or a new one.
fn count_partitions(n: usize, blocks: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    blocks as u64 * count_partitions(n - 1, blocks) + count_partitions(n - 1, blocks + 1)
}

#[test]
fn bell_by_brute_count() {
    for k in 0..=12 {
        assert_eq!(bell(k).to_u64().unwrap(), count_partitions(k, 0), "k={k}");
        assert_eq!(hom_dim_generic(0, k), bell(k));
    }
}

#[test]
fn poisson_half_second_moment_against_series() {
    let m = poisson_moments(&rat(1, 2), 2).unwrap();
    assert_eq!(m.get(2, 0).unwrap(), &rat(3, 4));
    let lam: f64 = 0.5;
    let mut term = (-lam).exp();
    let mut series = 0.0;
    for r in 0..60 {
        series += (r * r) as f64 * term;
        term *= lam / (r + 1) as f64;
    }
    assert!((series - 0.75).abs() < 1e-14);
}

#[test]
fn fix_moments_by_enumerating_symmetric_groups() {
    for n in 1..=6 {
        let perms = permutations(n);
        for k in 0..=5u32 {
            let total: u64 = perms
                .iter()
                .map(|p| (p.iter().enumerate().filter(|(i, &v)| *i == v).count() as u64).pow(k))
                .sum();
            let exact = exact_fix_moment(k as usize, n).unwrap();
            assert_eq!(exact, rat(total as i64, perms.len() as i64), "n={n} k={k}");
        }
    }
    assert_eq!(exact_fix_moment(4, 2).unwrap(), rat(8, 1));
}

#[test]
fn standard_character_moments_on_s4() {
    // chi_{(n-1,1)} = fix - 1
    let perms = permutations(4);
    let lam = IntegerPartition::new(vec![1]).unwrap();
    for a in 0..=4u32 {
        let total: i64 = perms
            .iter()
            .map(|p| (p.iter().enumerate().filter(|(i, &v)| *i == v).count() as i64 - 1).pow(a))
            .sum();
        assert_eq!(character_moment_exact(&lam, 4, a).unwrap(), rat(total, 24), "a={a}");
    }
}

#[test]
fn joint_cycle_moment_against_enumeration() {
    // exact E[l_1 l_2] on S_7 by enumeration, against a seeded experiment
    let n = 7;
    let perms = permutations(n);
    let mut total = 0u64;
    for p in &perms {
        let lens = cycle_lengths(p);
        let l1 = lens.iter().filter(|&&l| l == 1).count() as u64;
        let l2 = lens.iter().filter(|&&l| l == 2).count() as u64;
        total += l1 * l2;
    }
    let exact = total as f64 / perms.len() as f64;
    let exp = cycle_poisson_experiment(n, 200_000, 2, 11).unwrap();
    let jm = exp.joint.iter().find(|j| j.exponents == [1, 1]).unwrap();
    assert!((jm.empirical - exact).abs() <= 4.0 * jm.stderr, "{} vs {exact}", jm.empirical);
}

/// Brute force over all `n x n` matrices and vectors over `F_p`.
fn brute_fix_laws(n: usize, p: u64) -> (BTreeMap<u64, u64>, BTreeMap<u64, u64>) {
    let vecs: Vec<Vec<u64>> = (0..p.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        })
        .collect();
    let apply = |m: &[u64], v: &[u64]| -> Vec<u64> {
        (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum::<u64>() % p).collect()
    };
    let mut gl = BTreeMap::new();
    let mut aff = BTreeMap::new();
    for code in 0..p.pow((n * n) as u32) {
        let mut c = code;
        let m: Vec<u64> = (0..n * n)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect();
        let images: Vec<Vec<u64>> = vecs.iter().map(|v| apply(&m, v)).collect();
        let mut distinct = images.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != vecs.len() {
            continue;
        }
        let fixed = vecs.iter().zip(&images).filter(|(v, w)| v == w).count() as u64;
        *gl.entry(fixed).or_insert(0) += 1;
        for b in &vecs {
            let fixed = vecs
                .iter()
                .zip(&images)
                .filter(|(v, w)| w.iter().zip(b.iter()).map(|(x, y)| (x + y) % p).eq(v.iter().copied()))
                .count() as u64;
            *aff.entry(fixed).or_insert(0) += 1;
        }
    }
    (gl, aff)
}

#[test]
fn group_fix_laws_by_brute_force() {
    for (n, p) in [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3)] {
        let (gl, aff) = brute_fix_laws(n, p);
        assert_eq!(exact_gl_fix_law(n, p).unwrap(), gl, "GL n={n} q={p}");
        assert_eq!(exact_aff_fix_law(n, p).unwrap(), aff, "Aff n={n} q={p}");
    }
}

#[test]
fn gram_rank_matches_stirling_sums() {
    for k in 0..=6 {
        for n in 1..=6u64 {
            let expect: u64 = (0..=n as usize).map(|j| stirling2(k, j).to_u64().unwrap()).sum();
            assert_eq!(gram_rank_at(k, n).unwrap() as u64, expect, "k={k} n={n}");
        }
    }
}

#[test]
fn sieve_against_trial_division() {
    let trial: Vec<u64> = (2..=10_000u64)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect();
    assert_eq!(primes_up_to(10_000), trial);
    for &p in &trial {
        assert!(is_prime(p));
    }
    assert_eq!(primes_up_to(1_000_000).len(), 78_498);
}

fn f_exact(n: u64) -> BigInt {
    // sum_{k<=n} n!/k!
    let mut total = BigInt::zero();
    let mut prod = BigInt::from(1);
    for k in (0..=n).rev() {
        total += &prod;
        prod *= k.max(1);
        if k == 0 {
            break;
        }
    }
    total
}

#[test]
fn rho_against_exact_integers() {
    let table = rho_table(&PseudoPolySpec::BuiltinF, 100).unwrap();
    assert_eq!(table.len(), 25);
    for (p, r) in table {
        let count = (0..p).filter(|&x| (f_exact(x) % BigInt::from(p)).is_zero()).count() as u64;
        assert_eq!(r, count, "p={p}");
    }
}

#[test]
fn expsum_against_per_term_summation() {
    let p = 101u64;
    let mut w = Complex64::new(0.0, 0.0);
    let mut f = 1u64;
    for x in 0..p {
        if x > 0 {
            f = (x * f + 1) % p;
        }
        let theta = 2.0 * std::f64::consts::PI * f as f64 / p as f64;
        w += Complex64::from_polar(1.0, theta);
    }
    w /= (p as f64).sqrt();
    let lib = expsum_w(&PseudoPolySpec::BuiltinF, p, 1).unwrap();
    assert!((lib - w).norm() < 1e-12, "{lib} vs {w}");

    let sq = PseudoPolySpec::Polynomial(vec![0, 0, 1]);
    for a in 1..7 {
        assert!((expsum_w(&sq, 7, a).unwrap().norm() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn hall_on_factorials_and_f() {
    let fact: Vec<BigInt> = (0..10u64)
        .scan(BigInt::from(1), |acc, n| {
            if n > 0 {
                *acc *= n;
            }
            Some(acc.clone())
        })
        .collect();
    let bad = hall_check_sequence(&fact).unwrap();
    // 1 = 1!-0! is divisible by 1; 2!-0! = 1 is not divisible by 2
    assert_eq!(bad, (2, 0));
    let f: Vec<BigInt> = (0..=60).map(f_exact).collect();
    assert_eq!(hall_check_sequence(&f), None);
}
