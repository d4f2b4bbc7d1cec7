//! The chapters of `book/`, included verbatim so that `cargo test` runs
//! every Rust block in them.

#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}

#[doc = include_str!("../../../book/src/exact-numbers.md")]
pub mod exact_numbers {}

#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}

#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}

#[doc = include_str!("../../../book/src/dominance.md")]
pub mod dominance {}

#[doc = include_str!("../../../book/src/trajectories.md")]
pub mod trajectories {}

#[doc = include_str!("../../../book/src/lagrangian.md")]
pub mod lagrangian {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
