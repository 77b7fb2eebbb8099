//! Exact combinatorial primitives: set partitions, Bell and Stirling numbers,
//! Gaussian binomials and subspace counts, rencontres numbers, cycle types,
//! and symmetric-group characters.

mod characters;
mod integer_partition;
mod numbers;
mod set_partition;

pub use characters::{character_value, CharacterEvaluator};
pub use integer_partition::{enumerate_cycle_types, integer_partitions, CycleType, IntegerPartition};
pub use numbers::{
    bell, bell_table, binomial, count_affine_subspaces, count_subspaces, factorial, gauss_binomial,
    is_prime_power, partitions_with_at_most, rencontres, rencontres_row, stirling2, stirling2_table,
    subfactorial, subfactorial_table,
};
pub(crate) use numbers::binomial_row;
pub use set_partition::{enumerate_set_partitions, SetPartition, SetPartitions};
