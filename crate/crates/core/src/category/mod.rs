//! The partition category `Rep(S_t)`.
//!
//! Objects are finite ordered sets `[X] = {0, .., |X|-1}`. A morphism
//! `X -> Y` is a `Q[t]`-linear combination of set partitions of `X ⊔ Y`
//! (source elements first). Composing two basis partitions glues them along
//! the middle set and multiplies by `t` to the number of closed components
//! that never reach the outer sets.
//!
//! Tensor products concatenate ground sets with the left factor first, so
//! the associativity and unit constraints are strict equalities. Idempotent
//! completion is not constructed; every coefficient stays polynomial in `t`
//! and specialising `t` to a number is plain evaluation.

mod dims;
mod glue;
mod morphism;
mod poly;

pub use dims::{bareiss_rank, gram_matrix, gram_rank_at, hom_dim_generic, hom_dim_repsn_unit_std};
pub use glue::{glue, Glued};
pub use morphism::{t_at, CatObject, Morphism, SpecializedMorphism};
pub use poly::{parse_rational, PolyT};
