use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{rational_to_f64, BigRational};
use crate::perm::Permutation;
use crate::repstate::{NaturalVector, Representation};
use crate::spectrum::{base_energy, BaseEnergy};

use super::dominance::DominanceResult;
use super::step::prob_step;

/// Born probability of `U^t n` against `m` for `t = 0..=t_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryTrace {
    pub permutation: Permutation,
    pub representation: Representation,
    pub probabilities: Vec<BigRational>,
    pub dominance: Option<DominanceResult>,
    pub base_energy: Option<BaseEnergy>,
}

impl TrajectoryTrace {
    pub fn t_max(&self) -> u64 {
        self.probabilities.len() as u64 - 1
    }

    pub fn times(&self) -> impl Iterator<Item = u64> + '_ {
        0..self.probabilities.len() as u64
    }

    pub fn floats(&self) -> Vec<f64> {
        self.probabilities.iter().map(rational_to_f64).collect()
    }

    /// First time of the largest probability.
    pub fn peak(&self) -> (u64, &BigRational) {
        let mut best = 0;
        for (t, p) in self.probabilities.iter().enumerate() {
            if *p > self.probabilities[best] {
                best = t;
            }
        }
        (best as u64, &self.probabilities[best])
    }

    pub fn with_dominance(mut self, d: DominanceResult) -> Self {
        self.dominance = Some(d);
        self
    }
}

/// `min(order(U), cap)`, at least 1.
pub fn default_t_max(u: &Permutation, cap: u64) -> u64 {
    let order = u.order();
    order.min(BigUint::from(cap)).to_u64().unwrap_or(cap).max(1)
}

/// Trace of powers of `u` applied to `n`, measured against `m`.
///
/// ```
/// use permqm::dynamics::trace_evolution;
/// use permqm::repstate::Representation;
///
/// let u = "2 3 1".parse().unwrap();
/// let n = "5 0 1".parse().unwrap();
/// let m = "1 5 0".parse().unwrap();
/// let tr = trace_evolution(&u, &n, &m, Representation::Natural, 6).unwrap();
/// assert_eq!(tr.probabilities[1].to_string(), "1");
/// assert_eq!(tr.probabilities[1], tr.probabilities[4]);
/// assert_eq!(tr.base_energy.unwrap().to_string(), "1/3");
/// ```
pub fn trace_evolution(
    u: &Permutation,
    n: &NaturalVector,
    m: &NaturalVector,
    rep: Representation,
    t_max: u64,
) -> Result<TrajectoryTrace> {
    if t_max < 1 {
        return Err(Error::InvalidSize("t_max must be at least 1".into()));
    }
    if u.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: n.degree(),
        });
    }
    let mut power = Permutation::identity(u.degree());
    let mut probabilities = Vec::with_capacity(t_max as usize + 1);
    for _ in 0..=t_max {
        probabilities.push(prob_step(&power, n, m, rep)?);
        power = u.compose(&power)?;
    }
    Ok(TrajectoryTrace {
        permutation: u.clone(),
        representation: rep,
        probabilities,
        dominance: None,
        base_energy: base_energy(u),
    })
}
