use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::table::ExactTable;
use crate::combinatorics::{binomial_row, count_subspaces, factorial};
use crate::error::{invalid, Result};

/// Moments `m_0, .., m_K` of Poisson(`lambda`) from
/// `m_{k+1} = lambda * sum_{r<=k} C(k, r) m_r`.
pub fn poisson_moments(lambda: &BigRational, max_order: usize) -> Result<ExactTable> {
    if !lambda.is_positive() {
        return invalid(format!("Poisson parameter must be positive, got {lambda}"));
    }
    let mut m = vec![BigRational::one()];
    for k in 0..max_order {
        let s = binomial_row(k)
            .into_iter()
            .zip(&m)
            .fold(BigRational::zero(), |acc, (c, mr)| {
                acc + BigRational::from_integer(BigInt::from(c)) * mr
            });
        m.push(lambda * s);
    }
    ExactTable::real(m)
}

/// Mixed moments of the standard complex Gaussian: `m(a, b) = a! δ_ab`.
pub fn complex_gaussian_moments(max_order: usize) -> ExactTable {
    ExactTable::mixed(max_order, |a, b| {
        if a == b {
            BigRational::from_integer(BigInt::from(factorial(a as u64)))
        } else {
            BigRational::zero()
        }
    })
    .expect("a! δ_ab is normalized and symmetric")
}

/// `m_k` = number of linear subspaces of `F_q^k`.
pub fn q_fix_moments(q: u64, max_order: usize) -> Result<ExactTable> {
    let m = (0..=max_order)
        .map(|k| count_subspaces(k as u32, q))
        .collect::<Result<Vec<_>>>()?;
    ExactTable::real_from_integers(m)
}

/// Limit moments of `|Fix|` on `Aff_n(F_q)`: `m_0 = 1` and, for `k >= 1`,
/// `m_k` = number of linear subspaces of `F_q^(k-1)`.
///
/// By Burnside, `m_k` counts orbits of `k`-tuples of points; moving the first
/// point to the origin leaves `GL_n`-orbits of `(k-1)`-tuples of vectors,
/// which are classified by their linear relations. This is not the number
/// of nonempty affine subspaces of `F_q^(k-1)` (that count gives `q + 1` at
/// `k = 2`, while every `Aff_n(F_q)` with `n >= 1` gives 2).
pub fn q_affine_fix_moments(q: u64, max_order: usize) -> Result<ExactTable> {
    count_subspaces(0, q)?;
    let m = (0..=max_order)
        .map(|k| {
            if k == 0 {
                Ok(1u32.into())
            } else {
                count_subspaces(k as u32 - 1, q)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ExactTable::real_from_integers(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn poisson_examples() {
        let p1 = poisson_moments(&q(1, 1), 20).unwrap();
        for k in 0..=20 {
            assert_eq!(p1.get(k, 0).unwrap(), &BigRational::from_integer(bell(k).into()));
        }
        let half = poisson_moments(&q(1, 2), 4).unwrap();
        assert_eq!(half.get(1, 0).unwrap(), &q(1, 2));
        assert_eq!(half.get(2, 0).unwrap(), &q(3, 4));
        assert!(poisson_moments(&q(0, 1), 3).is_err());
        assert!(poisson_moments(&q(-1, 2), 3).is_err());
    }

    /// Truncated series `sum_r r^k e^-λ λ^r / r!` in floating point.
    #[test]
    fn poisson_against_series() {
        for &(num, den) in &[(1i64, 2i64), (3, 1), (7, 4)] {
            let lam = num as f64 / den as f64;
            let exact = poisson_moments(&q(num, den), 6).unwrap().to_f64();
            for k in 0..=6 {
                let mut term = (-lam).exp();
                let mut s = 0.0;
                for r in 0..200 {
                    if r > 0 {
                        term *= lam / r as f64;
                    }
                    s += (r as f64).powi(k as i32) * term;
                }
                let e = *exact.get(k, 0).unwrap();
                assert!((s - e).abs() < 1e-9 * e.max(1.0), "λ={lam} k={k}");
            }
        }
    }

    #[test]
    fn gaussian_and_fix_examples() {
        let g = complex_gaussian_moments(6);
        assert_eq!(g.get(0, 0).unwrap(), &q(1, 1));
        assert_eq!(g.get(2, 2).unwrap(), &q(2, 1));
        assert_eq!(g.get(3, 1).unwrap(), &q(0, 1));
        assert_eq!(g.get(3, 3).unwrap(), &q(6, 1));

        let f = q_fix_moments(2, 3).unwrap();
        assert_eq!(f.get(0, 0).unwrap(), &q(1, 1));
        assert_eq!(f.get(2, 0).unwrap(), &q(5, 1));
        let a = q_affine_fix_moments(2, 3).unwrap();
        assert_eq!(a.get(0, 0).unwrap(), &q(1, 1));
        assert_eq!(a.get(1, 0).unwrap(), &q(1, 1));
        assert_eq!(a.get(2, 0).unwrap(), &q(2, 1));
        assert_eq!(a.get(3, 0).unwrap(), &q(5, 1));
        assert!(q_fix_moments(6, 2).is_err());
        assert!(q_affine_fix_moments(10, 0).is_err());
    }
}
