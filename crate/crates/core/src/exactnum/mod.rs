//! Exact scalars: arbitrary-precision rationals and the cyclotomic fields
//! ℚ(ζ_k).
//!
//! Probabilities everywhere in the crate are [`BigRational`]. Symmetric
//! groups split over ℚ, so cyclotomic numbers never appear on the
//! probability path; [`CyclotomicNumber`] provides the general field for
//! representations that need roots of unity.

mod cyclotomic;
mod poly;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use rational::{ln_biguint, ln_rational, parse_rational, rational_to_f64, BigRational};
