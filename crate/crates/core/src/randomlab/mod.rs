//! Seeded samplers and exact enumerators: fixed points and cycle counts of
//! random permutations, fixed points of random linear and affine maps over
//! finite fields, traces of Haar unitaries, and symmetric-group character
//! moments.
//!
//! Every experiment splits its trials into blocks of [`BLOCK_SIZE`]; block
//! `j` uses ChaCha8 stream `j` of the master seed and block results are
//! merged in block order, so output does not depend on the thread count.

mod characters;
mod distribution;
mod field;
mod groups;
mod permutations;
mod rng;
mod unitary;

pub use characters::{character_mc_experiment, character_moment_exact, character_moment_with, stabilize, Stabilization};
pub use distribution::EmpiricalDistribution;
pub use field::{Field, FqMatrix, MAX_PRIME_FIELD};
pub use groups::{
    aff_fix_experiment, exact_aff_fix_law, exact_gl_fix_law, fix_size_aff, fix_size_gl, gl_fix_experiment,
    law_as_distribution, law_moment, sample_aff, sample_gl, AffineMap, RETRY_CAP,
};
pub use permutations::{
    cycle_counts, cycle_poisson_experiment, exact_fix_distribution, exact_fix_moment, fix_count, fix_experiment,
    fix_moment_from_law, fix_tv_to_poisson, inv_e, sample_permutation, CycleExperiment, JointMoment,
    JOINT_MAX_CYCLE, JOINT_MAX_DEGREE,
};
pub use rng::{run_blocks, RngSpec, BLOCK_SIZE, GENERATOR};
pub use unitary::{sample_unitary, trace_experiment};
