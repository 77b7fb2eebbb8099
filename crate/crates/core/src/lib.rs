//! Exact computations in the partition category `Rep(S_t)` and the
//! experiments that go with it.
//!
//! The crate is organised around five areas:
//!
//! * [`combinatorics`]: set partitions, Bell and Stirling numbers, Gaussian
//!   binomials, rencontres numbers, cycle types and symmetric-group
//!   characters, all in arbitrary precision.
//! * [`category`]: morphisms of `Rep(S_t)` as linear combinations of set
//!   partitions with coefficients in `Q[t]`, with composition, tensor product,
//!   transpose, rigid duality and hom-space dimensions.
//! * [`measures`]: moment tables of limit laws, pushforwards, exact Hankel
//!   positivity, and the empirical-vs-target comparator.
//! * [`randomlab`]: seeded samplers and exact enumerators for permutations,
//!   `GL_n(F_q)`, `Aff_n(F_q)`, `U(n)` and symmetric-group characters.
//! * [`arith`]: root counts and exponential sums of the pseudopolynomial
//!   `F(n) = sum_{k<=n} n!/k!` modulo primes.
//!
//! The guide under `book/` walks through each area with runnable snippets;
//! those snippets are compiled and run as doc-tests of this crate.

pub mod arith;
pub mod category;
pub mod combinatorics;
mod error;
pub mod guard;
pub mod measures;
pub mod randomlab;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/set-partitions.md")]
    mod set_partitions {}
    #[doc = include_str!("../../../book/src/partition-category.md")]
    mod partition_category {}
    #[doc = include_str!("../../../book/src/moment-tables.md")]
    mod moment_tables {}
    #[doc = include_str!("../../../book/src/random-groups.md")]
    mod random_groups {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/pseudopolynomials.md")]
    mod pseudopolynomials {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
