//! Enumeration caps.
//!
//! Hom spaces and group enumerations grow like Bell numbers or `q^(n^2)`, so
//! every enumerating routine checks a hard cap first. Setting the environment
//! variable `TEL_SIZE_GUARD=off` disables all caps.

use crate::error::{Error, Result};

/// Name of the environment variable that lifts every cap when set to `off`.
pub const ENV_VAR: &str = "TEL_SIZE_GUARD";

/// Largest set size accepted by [`crate::combinatorics::enumerate_set_partitions`].
pub const MAX_PARTITION_GROUND: usize = 14;

/// Largest total object size for hom-space enumeration and Gram ranks.
pub const MAX_OBJECT_SIZE: usize = 10;

/// Largest number of matrices scanned by exhaustive group enumeration.
pub const MAX_GROUP_SCAN: u128 = 1 << 24;

/// Largest prime accepted by exact-mode exponential sum moments.
pub const MAX_EXACT_EXPSUM_PRIME: u64 = 100_000;

/// Returns `true` unless `TEL_SIZE_GUARD=off` is set.
pub fn enabled() -> bool {
    !matches!(std::env::var(ENV_VAR), Ok(v) if v.eq_ignore_ascii_case("off"))
}

/// Fails with [`Error::SizeGuard`] when `requested > limit` and caps are on.
pub fn check(what: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit && enabled() {
        return Err(Error::SizeGuard {
            what,
            requested,
            limit,
        });
    }
    Ok(())
}
