use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::glue::glue;
use crate::combinatorics::{bell, enumerate_set_partitions, partitions_with_at_most};
use crate::error::{invalid, Result};
use crate::guard;

/// `dim Hom([X], [Y])` over `Q(t)`: the Bell number of `|X| + |Y|`.
pub fn hom_dim_generic(x: usize, y: usize) -> BigUint {
    bell(x + y)
}

/// `dim Hom_{S_n}(1, Std_n^{⊗k})`: partitions of a `k`-set into at most `n`
/// blocks. Equals `bell(k)` exactly when `n >= k`.
pub fn hom_dim_repsn_unit_std(k: usize, n: usize) -> Result<BigUint> {
    if n == 0 {
        return invalid("hom_dim_repsn_unit_std needs n >= 1");
    }
    Ok(partitions_with_at_most(k, n))
}

/// Rank over `Q` of the square matrix via fraction-free (Bareiss)
/// elimination with row pivoting. All intermediate entries stay integral.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &pivot_row[col] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Gram matrix `G[a][b] = n^gamma(a, b)` where `a` runs over partitions of
/// `[k]` seen as morphisms `∅ -> [k]` and `b` over the same partitions seen
/// as `[k] -> ∅`; `gamma` is the exponent produced by composing `b ∘ a`.
pub fn gram_matrix(k: usize, n: u64) -> Result<Vec<Vec<BigInt>>> {
    guard::check("Gram matrix object size", k as u128, guard::MAX_OBJECT_SIZE as u128)?;
    let parts = enumerate_set_partitions(k)?;
    let base = BigInt::from(n);
    parts
        .iter()
        .map(|a| {
            parts
                .iter()
                .map(|b| Ok(Pow::pow(&base, glue(a, b, 0, k, 0)?.gamma)))
                .collect()
        })
        .collect()
}

/// Rank of [`gram_matrix`]`(k, n)` over `Q`.
///
/// The Gram matrix has `bell(k)` rows; elimination cost grows like
/// `bell(k)^3`, which is seconds at `k = 6` and impractical well before the
/// hard cap `k = 10`.
pub fn gram_rank_at(k: usize, n: u64) -> Result<usize> {
    if n == 0 {
        return invalid("gram_rank_at needs n >= 1");
    }
    Ok(bareiss_rank(gram_matrix(k, n)?))
}
