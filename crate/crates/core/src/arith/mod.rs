//! Root counts and exponential sums of `F(n) = sum_{k<=n} n!/k!` and of
//! integer polynomials modulo primes.
//!
//! `F` is reduced mod `p` with the recurrence `F(n) = n F(n-1) + 1`, one
//! pass of `p` steps per prime. Exponential sums use a root-of-unity table
//! and compensated summation, so each sum carries an error of a few ulps
//! times `p`.

mod expsum;
mod hall;
mod primes;
mod rho;
mod spec;

pub use expsum::{
    expsum_moments, expsum_w, roots_of_unity, second_moment_identity, value_counts, ExpsumMode, ExpsumMoments,
    MAX_EXPSUM_PRIME,
};
pub use hall::{hall_check, hall_check_sequence, hall_pair, HallReport};
pub use primes::{is_prime, primes_up_to, PrimeRange};
pub use rho::{
    poisson1_mass, rho, rho_histogram, rho_table, summarize_rho, RhoHistogram, RhoRow, MAX_RHO_PRIME, RHO_CAP,
};
pub use spec::PseudoPolySpec;
