use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::Rng;

use super::distribution::EmpiricalDistribution;
use super::field::{Field, FqMatrix};
use super::rng::run_blocks;
use crate::error::{invalid, Error, Result};
use crate::guard;

/// Hard cap on rejection attempts per sample.
pub const RETRY_CAP: u32 = 10_000;

/// An affine map `x -> A x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub a: FqMatrix,
    pub b: Vec<u32>,
}

fn check_fix_range(n: usize, q: u32) -> Result<()> {
    if n == 0 {
        return invalid("matrix size n must be at least 1");
    }
    if (n as f64) * (q as f64).log2() >= 62.0 {
        return invalid(format!("q^n = {q}^{n} does not fit the 64-bit fixed-point counter"));
    }
    Ok(())
}

/// Uniform element of `GL_n(F_q)` by rejection from uniform matrices.
pub fn sample_gl<R: Rng + ?Sized>(n: usize, field: &Field, rng: &mut R) -> Result<FqMatrix> {
    for _ in 0..RETRY_CAP {
        let m = FqMatrix::random(field, n, n, rng);
        if m.rank(field) == n {
            return Ok(m);
        }
    }
    Err(Error::RetryCap(RETRY_CAP))
}

/// Uniform element of `Aff_n(F_q)`.
pub fn sample_aff<R: Rng + ?Sized>(n: usize, field: &Field, rng: &mut R) -> Result<AffineMap> {
    let a = sample_gl(n, field, rng)?;
    let b = (0..n).map(|_| field.random(rng)).collect();
    Ok(AffineMap { a, b })
}

/// `|Fix(g)| = q^{dim ker(g - I)}`.
pub fn fix_size_gl(field: &Field, g: &FqMatrix) -> u64 {
    let r = g.minus_identity(field).rank(field);
    (field.order() as u64).pow((g.rows - r) as u32)
}

/// `|Fix(x -> Ax + b)|`: `q^{dim ker(A - I)}` when `(A - I) x = -b` is
/// solvable, else 0.
pub fn fix_size_aff(field: &Field, f: &AffineMap) -> u64 {
    let m = f.a.minus_identity(field);
    let r = m.rank(field);
    let neg_b: Vec<u32> = f.b.iter().map(|&v| field.neg(v)).collect();
    if m.augment(&neg_b).rank(field) != r {
        return 0;
    }
    (field.order() as u64).pow((f.a.rows - r) as u32)
}

fn all_vectors(q: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let d = (code % q as u64) as u32;
                code /= q as u64;
                d
            })
            .collect()
    })
}

/// Exact law of `|Fix|` on `GL_n(F_q)`: fix size mapped to the number of
/// group elements. Scans all `q^(n^2)` matrices.
pub fn exact_gl_fix_law(n: usize, q: u64) -> Result<BTreeMap<u64, u64>> {
    let field = Field::new(q)?;
    check_fix_range(n, field.order())?;
    let scan = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    guard::check("GL matrices scanned", scan, guard::MAX_GROUP_SCAN)?;
    let mut law = BTreeMap::new();
    for data in all_vectors(field.order(), n * n) {
        let g = FqMatrix { rows: n, cols: n, data };
        if g.rank(&field) == n {
            *law.entry(fix_size_gl(&field, &g)).or_insert(0) += 1;
        }
    }
    Ok(law)
}

/// Exact law of `|Fix|` on `Aff_n(F_q)`. Scans `q^(n^2 + n)` pairs.
pub fn exact_aff_fix_law(n: usize, q: u64) -> Result<BTreeMap<u64, u64>> {
    let field = Field::new(q)?;
    check_fix_range(n, field.order())?;
    let scan = (q as u128).checked_pow((n * n + n) as u32).unwrap_or(u128::MAX);
    guard::check("affine maps scanned", scan, guard::MAX_GROUP_SCAN)?;
    let mut law = BTreeMap::new();
    for data in all_vectors(field.order(), n * n) {
        let a = FqMatrix { rows: n, cols: n, data };
        if a.rank(&field) != n {
            continue;
        }
        for b in all_vectors(field.order(), n) {
            let f = AffineMap { a: a.clone(), b };
            *law.entry(fix_size_aff(&field, &f)).or_insert(0) += 1;
        }
    }
    Ok(law)
}

/// `sum count * v^k / sum count` for an exact law.
pub fn law_moment(law: &BTreeMap<u64, u64>, k: u32) -> BigRational {
    let total: u64 = law.values().sum();
    if total == 0 {
        return BigRational::zero();
    }
    let s: BigInt = law
        .iter()
        .map(|(&v, &c)| Pow::pow(BigInt::from(v), k) * c)
        .sum();
    BigRational::new(s, BigInt::from(total))
}

/// Law of an exact enumeration as a distribution with no sampling.
pub fn law_as_distribution(law: &BTreeMap<u64, u64>) -> EmpiricalDistribution {
    let mut d = EmpiricalDistribution::new(0);
    d.generator = "exact-enumeration".to_string();
    for (&v, &c) in law {
        d.histogram.insert(v as i64, c);
        d.trials += c;
    }
    d
}

/// Histogram of `|Fix(g)|` for `trials` uniform `g` in `GL_n(F_q)`.
pub fn gl_fix_experiment(n: usize, q: u64, trials: u64, seed: u64) -> Result<EmpiricalDistribution> {
    let field = Field::new(q)?;
    check_fix_range(n, field.order())?;
    run_blocks(
        seed,
        trials,
        || EmpiricalDistribution::new(seed),
        |rng, d| {
            let g = sample_gl(n, &field, rng)?;
            d.record(fix_size_gl(&field, &g) as i64);
            Ok(())
        },
        |a, b| a.merge(b),
    )
}

/// Histogram of `|Fix(f)|` for `trials` uniform `f` in `Aff_n(F_q)`.
pub fn aff_fix_experiment(n: usize, q: u64, trials: u64, seed: u64) -> Result<EmpiricalDistribution> {
    let field = Field::new(q)?;
    check_fix_range(n, field.order())?;
    run_blocks(
        seed,
        trials,
        || EmpiricalDistribution::new(seed),
        |rng, d| {
            let f = sample_aff(n, &field, rng)?;
            d.record(fix_size_aff(&field, &f) as i64);
            Ok(())
        },
        |a, b| a.merge(b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{count_affine_subspaces, count_subspaces};
    use crate::randomlab::rng::RngSpec;

    fn int(v: num_bigint::BigUint) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn gl_enumeration_moments() {
        let law = exact_gl_fix_law(2, 2).unwrap();
        assert_eq!(law.values().sum::<u64>(), 6);
        assert_eq!(law_moment(&law, 1), BigRational::from_integer(2.into()));
        for k in 0..=2u32 {
            assert_eq!(law_moment(&law, k), int(count_subspaces(k, 2).unwrap()));
        }
        assert_eq!(exact_gl_fix_law(1, 2).unwrap(), BTreeMap::from([(2, 1)]));
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let law = exact_gl_fix_law(1, q).unwrap();
            assert_eq!(law.values().sum::<u64>(), q - 1);
            assert_eq!(law_moment(&law, 1), int(count_subspaces(1, q).unwrap()));
        }
        // n = 3 over F_2: 168 elements, moments k <= 3
        let law = exact_gl_fix_law(3, 2).unwrap();
        assert_eq!(law.values().sum::<u64>(), 168);
        for k in 0..=3u32 {
            assert_eq!(law_moment(&law, k), int(count_subspaces(k, 2).unwrap()));
        }
        assert!(law.keys().all(|&v| v.is_power_of_two()));
    }

    #[test]
    fn aff_enumeration_moments() {
        let law = exact_aff_fix_law(1, 2).unwrap();
        assert_eq!(law, BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(law_moment(&law, 1), BigRational::from_integer(1.into()));
        assert_eq!(law_moment(&law, 1), int(count_affine_subspaces(0, 2).unwrap()));
        // Aff_2(F_2) acts on the 4 points of F_2^2 as S_4
        let law = exact_aff_fix_law(2, 2).unwrap();
        assert_eq!(law.values().sum::<u64>(), 24);
        assert_eq!(law, BTreeMap::from([(0, 9), (1, 8), (2, 6), (4, 1)]));
        let limit = crate::measures::q_affine_fix_moments(2, 3).unwrap();
        for k in 0..=3u32 {
            assert_eq!(&law_moment(&law, k), limit.get(k as usize, 0).unwrap(), "k={k}");
        }
        assert_ne!(law_moment(&law, 2), int(count_affine_subspaces(1, 2).unwrap()));
        let law = exact_aff_fix_law(2, 3).unwrap();
        assert_eq!(law.values().sum::<u64>(), 48 * 9);
        for k in 1..=3u32 {
            assert_eq!(law_moment(&law, k), int(count_subspaces(k - 1, 3).unwrap()));
        }
    }

    #[test]
    fn guard_on_scans() {
        assert!(matches!(exact_gl_fix_law(5, 2), Err(Error::SizeGuard { .. })));
        assert!(exact_gl_fix_law(2, 6).is_err());
    }

    #[test]
    fn sampled_support_and_moment() {
        let field = Field::new(3).unwrap();
        let mut rng = RngSpec::new(1).rng();
        for _ in 0..500 {
            let g = sample_gl(3, &field, &mut rng).unwrap();
            let v = fix_size_gl(&field, &g);
            assert!([1, 3, 9, 27].contains(&v));
            let f = sample_aff(3, &field, &mut rng).unwrap();
            assert!([0, 1, 3, 9, 27].contains(&fix_size_aff(&field, &f)));
        }
        let d = gl_fix_experiment(4, 2, 100_000, 2).unwrap();
        let m = d.moments(2).unwrap();
        let e = m.table.get(2, 0).unwrap();
        assert!((e.value.re - 5.0).abs() <= 4.0 * e.stderr);
        assert_eq!(gl_fix_experiment(1, 2, 50, 0).unwrap().histogram, BTreeMap::from([(2, 50)]));
    }
}
