use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::BigRational;
use crate::perm::Permutation;
use crate::repstate::{NaturalVector, Representation};

use super::step::prob_step;

/// Observation instants, strictly increasing, at least two of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationSchedule {
    times: Vec<i64>,
}

impl ObservationSchedule {
    pub fn new(times: Vec<i64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::InvalidSchedule(format!(
                "{} instants, need at least 2",
                times.len()
            )));
        }
        if let Some(w) = times.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSchedule(format!(
                "{} is not before {}",
                w[0], w[1]
            )));
        }
        Ok(ObservationSchedule { times })
    }

    /// `0, 1, …, steps`.
    pub fn consecutive(steps: usize) -> Result<Self> {
        Self::new((0..=steps as i64).collect())
    }

    pub fn times(&self) -> &[i64] {
        &self.times
    }

    /// Number of transitions, one fewer than instants.
    pub fn steps(&self) -> usize {
        self.times.len() - 1
    }
}

/// States observed at each instant and the permutations carrying each one
/// to the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionModel {
    schedule: ObservationSchedule,
    states: Vec<NaturalVector>,
    transitions: Vec<Permutation>,
    representation: Representation,
}

impl EvolutionModel {
    pub fn new(
        schedule: ObservationSchedule,
        states: Vec<NaturalVector>,
        transitions: Vec<Permutation>,
        representation: Representation,
    ) -> Result<Self> {
        if states.len() != schedule.times().len() {
            return Err(Error::InvalidSchedule(format!(
                "{} states for {} instants",
                states.len(),
                schedule.times().len()
            )));
        }
        if transitions.len() != schedule.steps() {
            return Err(Error::InvalidSchedule(format!(
                "{} transitions for {} steps",
                transitions.len(),
                schedule.steps()
            )));
        }
        let degree = states[0].degree();
        for s in &states {
            if s.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: s.degree(),
                });
            }
            representation.validate(s)?;
        }
        for u in &transitions {
            if u.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: u.degree(),
                });
            }
        }
        Ok(EvolutionModel {
            schedule,
            states,
            transitions,
            representation,
        })
    }

    pub fn schedule(&self) -> &ObservationSchedule {
        &self.schedule
    }

    pub fn states(&self) -> &[NaturalVector] {
        &self.states
    }

    pub fn transitions(&self) -> &[Permutation] {
        &self.transitions
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    /// `P_k` for `k = 1..=n`.
    pub fn step_probabilities(&self) -> Result<Vec<BigRational>> {
        self.transitions
            .iter()
            .enumerate()
            .map(|(k, u)| prob_step(u, &self.states[k], &self.states[k + 1], self.representation))
            .collect()
    }

    /// `Π P_k`, the probability of the whole trajectory.
    pub fn trajectory_probability(&self) -> Result<BigRational> {
        let mut total = BigRational::from_integer(1.into());
        for p in self.step_probabilities()? {
            if p.is_zero() {
                return Ok(p);
            }
            total *= p;
        }
        Ok(total)
    }
}
