//! Evolution as a sequence of observations.
//!
//! Time is a strictly increasing sequence of integer instants `t_0 < … < t_n`.
//! Between consecutive observations the state moves by a unitary, here the
//! matrix of a permutation, and the transition is weighted by the Born
//! probability `P_k = tr(U_k ρ_{k-1} U_k† ρ_k)`. The single-step entropy is
//! `-ln P_k` and sums along a trajectory.

mod dominance;
mod entropy;
mod lagrangian;
mod measure;
mod model;
mod step;
mod trace;
mod weights;

pub use dominance::{
    brute_force_dominant, dominant_evolution, BruteForceDominance, DominanceResult, Orientation,
    BRUTE_FORCE_MAX_DEGREE,
};
pub use entropy::{step_entropy, step_entropy_exact, trajectory_entropy, TrajectoryEntropy};
pub use lagrangian::{
    halving_steps, lagrangian, lagrangian_terms, random_hermitian, LagrangianInputs,
    LagrangianTerms, SmoothFamily,
};
pub use measure::{evolve_density, expectation, observe};
pub use model::{EvolutionModel, ObservationSchedule};
pub use step::{prob_step, prob_step_density, prob_step_float, unitary_of};
pub use trace::{default_t_max, trace_evolution, TrajectoryTrace};
pub use weights::{
    prob_step_weighted, prob_step_weighted_exact, uniform_weights, WeightScheme, WeightedEstimate,
};
