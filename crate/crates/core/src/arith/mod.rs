//! Exact integer and rational primitives.

pub mod factor;
pub mod interval;
pub mod kronecker;
pub mod zeta;

/// Canonical exact rational (reduced, positive denominator).
pub type Rational = num::BigRational;

pub use factor::{d_profile, factorize, is_prime, DProfile, E2Case, Factorization, PrimeProfile};
pub use interval::{format_sci, IntervalReal, Rounding};
pub use kronecker::kronecker;
pub use zeta::{pi_fourth, zeta_d, zeta_d4_floor};

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
