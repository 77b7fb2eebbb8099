use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::table::{ratio_ln, ExactTable, MomentKind, MomentTable};
use crate::combinatorics::binomial_row;
use crate::error::{invalid, Error, Result};

fn require(table: &ExactTable, kind: MomentKind, what: &str) -> Result<()> {
    if table.kind() != kind {
        return invalid(format!("{what} needs a {kind:?} table, got {:?}", table.kind()));
    }
    Ok(())
}

/// Moments of `z + conj(z)` from a mixed table:
/// `entry(a) = sum_b C(a, b) source(b, a - b)`.
pub fn pushforward_2re(table: &ExactTable) -> Result<ExactTable> {
    require(table, MomentKind::ComplexMixed, "pushforward_2re")?;
    let m = (0..=table.max_order())
        .map(|a| {
            binomial_row(a)
                .into_iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (b, c)| {
                    acc + BigRational::from_integer(BigInt::from(c))
                        * table.get(b, a - b).expect("a <= max order")
                })
        })
        .collect();
    ExactTable::real(m)
}

/// Mixed moments of `w = z^m conj(z)^n` up to `order`:
/// `entry(a, b) = source(am + bn, an + bm)`.
pub fn pushforward_power(table: &ExactTable, m: usize, n: usize, order: usize) -> Result<ExactTable> {
    require(table, MomentKind::ComplexMixed, "pushforward_power")?;
    let needed = order * (m + n);
    if needed > table.max_order() {
        return Err(Error::MissingOrder {
            order: format!("total degree {needed}"),
            max_order: table.max_order(),
        });
    }
    ExactTable::mixed(order, |a, b| {
        table
            .get(a * m + b * n, a * n + b * m)
            .expect("checked against max order")
            .clone()
    })
}

/// Outcome of the exact positive-semidefiniteness test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    pub psd: bool,
    /// A vector `x` with `x^T H x < 0` when `psd` is false.
    pub witness: Option<Vec<BigRational>>,
}

/// Hankel matrix `H[i][j] = m_{i+j}`, `0 <= i, j <= size`.
pub fn hankel_matrix(table: &ExactTable, size: usize) -> Result<Vec<Vec<BigRational>>> {
    require(table, MomentKind::Real, "hankel_psd")?;
    table.entry(2 * size, 0)?;
    Ok((0..=size)
        .map(|i| (0..=size).map(|j| table.get(i + j, 0).unwrap().clone()).collect())
        .collect())
}

/// `x^T H x`.
pub fn quadratic_form(h: &[Vec<BigRational>], x: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, row) in h.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            s += &x[i] * v * &x[j];
        }
    }
    s
}

/// Decides whether the `(A+1) x (A+1)` Hankel matrix of `table` is positive
/// semidefinite, exactly over the rationals.
pub fn hankel_psd(table: &ExactTable, size: usize) -> Result<PsdVerdict> {
    Ok(symmetric_psd(hankel_matrix(table, size)?))
}

/// Symmetric pivoted LDL over `Q`. Negative diagonals and zero diagonals
/// with a nonzero row give a witness directly; otherwise a positive pivot is
/// eliminated by Schur complement and the witness is lifted back.
pub fn symmetric_psd(h: Vec<Vec<BigRational>>) -> PsdVerdict {
    let n = h.len();
    let mut s = h;
    let mut active: Vec<usize> = (0..n).collect();
    // (pivot, its row at elimination time)
    let mut eliminated: Vec<(usize, Vec<BigRational>)> = Vec::new();

    let lift = |mut x: Vec<BigRational>, elim: &[(usize, Vec<BigRational>)]| {
        for (k, row) in elim.iter().rev() {
            let mut acc = BigRational::zero();
            for (j, v) in row.iter().enumerate() {
                if j != *k {
                    acc += v * &x[j];
                }
            }
            x[*k] = -acc / &row[*k];
        }
        x
    };

    loop {
        if let Some(&k) = active.iter().find(|&&k| s[k][k].is_negative()) {
            let mut x = vec![BigRational::zero(); n];
            x[k] = BigRational::one();
            return PsdVerdict {
                psd: false,
                witness: Some(lift(x, &eliminated)),
            };
        }
        for &i in &active {
            if !s[i][i].is_zero() {
                continue;
            }
            if let Some(&j) = active.iter().find(|&&j| j != i && !s[i][j].is_zero()) {
                // (c e_i + e_j)^T S (c e_i + e_j) = 2c S_ij + S_jj = -1
                let c = -(&s[j][j] + BigRational::one()) / (BigRational::from_integer(2.into()) * &s[i][j]);
                let mut x = vec![BigRational::zero(); n];
                x[i] = c;
                x[j] = BigRational::one();
                return PsdVerdict {
                    psd: false,
                    witness: Some(lift(x, &eliminated)),
                };
            }
        }
        let Some(pos) = active.iter().position(|&k| s[k][k].is_positive()) else {
            // every remaining row is zero
            return PsdVerdict {
                psd: true,
                witness: None,
            };
        };
        let k = active.remove(pos);
        let mut row = vec![BigRational::zero(); n];
        row[k] = s[k][k].clone();
        for &j in &active {
            row[j] = s[k][j].clone();
        }
        for &i in &active {
            if s[k][i].is_zero() {
                continue;
            }
            let f = &s[k][i] / &s[k][k];
            for &j in &active {
                let d = &f * &s[k][j];
                s[i][j] -= d;
            }
        }
        eliminated.push((k, row));
    }
}

/// Partial Carleman sum `sum_{a=1..A} M_a^(-1/(2a))` where `M_a` is `m_{2a}`
/// for real tables and `m(a, a)` for mixed ones. Diagnostic only.
pub fn carleman_partial(table: &ExactTable, size: usize) -> Result<f64> {
    let mut s = 0.0;
    for a in 1..=size {
        let m = match table.kind() {
            MomentKind::Real => table.entry(2 * a, 0)?,
            MomentKind::ComplexMixed => table.entry(a, a)?,
        };
        if m.is_negative() {
            return invalid(format!("even moment of order {} is negative", 2 * a));
        }
        if m.is_zero() {
            return Ok(f64::INFINITY);
        }
        s += (-ratio_ln(m) / (2 * a) as f64).exp();
    }
    Ok(s)
}

/// Convenience for exact tables built from `f64` inputs in tests and the CLI.
pub fn real_table_from_ints(values: &[i64]) -> MomentTable<BigRational> {
    MomentTable::real_unchecked(
        values
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect(),
    )
}
