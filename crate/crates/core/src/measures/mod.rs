//! Moment tables of the limit laws, their pushforwards, exact Hankel
//! positivity, partial Carleman sums, and the empirical-vs-target comparator.
//!
//! A law is represented only by its moments. Exact tables hold rationals;
//! empirical tables hold `f64` means with standard errors and the trial
//! count.

mod compare;
mod laws;
mod ops;
mod table;

pub use compare::{compare_moments, CompareOptions, MomentReport, MomentRow, SupportCheck};
pub use laws::{complex_gaussian_moments, poisson_moments, q_affine_fix_moments, q_fix_moments};
pub use ops::{
    carleman_partial, hankel_matrix, hankel_psd, pushforward_2re, pushforward_power,
    quadratic_form, real_table_from_ints, symmetric_psd, PsdVerdict,
};
pub use table::{
    ratio_ln, ratio_to_f64, CompensatedSum, Estimate, EmpiricalMoments, ExactTable,
    MixedAccumulator, MomentKind, MomentTable,
};
