//! Random instances and the per-trial dominance computation.
//!
//! Trial `i` draws everything from the random stream `(seed, i)`, so results
//! do not depend on how trials are scheduled across threads.

use permqm::dynamics::{dominant_evolution, prob_step_float, DominanceResult};
use permqm::perm::Permutation;
use permqm::repstate::{NaturalVector, Representation};
use permqm::rng::stream;
use permqm::spectrum::{base_energy, BaseEnergy, EnergyHistogram};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub index: usize,
    pub n: NaturalVector,
    pub m: NaturalVector,
    pub dominance: DominanceResult,
    /// Step probability under a uniformly random permutation.
    pub baseline: f64,
    pub base: Option<BaseEnergy>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSpec {
    pub degree: usize,
    pub cmax: u64,
    pub seed: u64,
    pub representation: Representation,
}

/// A random pair `(n, m)` from stream `(seed, index)`.
pub fn random_pair(
    spec: &TrialSpec,
    index: usize,
) -> permqm::Result<(NaturalVector, NaturalVector)> {
    let mut rng = stream(spec.seed, index as u64);
    let n = NaturalVector::random(spec.degree, spec.cmax, &mut rng)?;
    let m = NaturalVector::random(spec.degree, spec.cmax, &mut rng)?;
    Ok((n, m))
}

pub fn run_trial(spec: &TrialSpec, index: usize) -> permqm::Result<Trial> {
    let mut rng = stream(spec.seed, index as u64);
    let n = NaturalVector::random(spec.degree, spec.cmax, &mut rng)?;
    let m = NaturalVector::random(spec.degree, spec.cmax, &mut rng)?;
    let dominance = dominant_evolution(&n, &m, spec.representation)?;
    let baseline_perm = Permutation::random(spec.degree, &mut rng)?;
    let baseline = prob_step_float(&baseline_perm, &n, &m, spec.representation)?;
    let base = base_energy(&dominance.dominant);
    Ok(Trial {
        index,
        n,
        m,
        dominance,
        baseline,
        base,
    })
}

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| CliError::BadArgs(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Trials `0..count` in order.
pub fn run_trials(spec: &TrialSpec, count: usize, workers: Option<usize>) -> CliResult<Vec<Trial>> {
    with_workers(workers, || {
        (0..count)
            .into_par_iter()
            .map(|i| run_trial(spec, i))
            .collect::<permqm::Result<Vec<_>>>()
    })?
    .map_err(CliError::from)
}

/// Energy histogram of the dominant permutations, merged from per-thread
/// partial histograms.
pub fn dominant_histogram(trials: &[Trial], workers: Option<usize>) -> CliResult<EnergyHistogram> {
    with_workers(workers, || {
        trials
            .par_iter()
            .fold(EnergyHistogram::new, |mut h, t| {
                h.add(&t.dominance.dominant);
                h
            })
            .reduce(EnergyHistogram::new, |mut a, b| {
                a.merge(&b);
                a
            })
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub median_dominant: f64,
    pub median_baseline: f64,
    /// Mean of `1/ε` over trials whose dominant permutation is not the
    /// identity.
    pub mean_inverse_base: Option<f64>,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k == 0 {
        return f64::NAN;
    }
    if k % 2 == 1 {
        values[k / 2]
    } else {
        (values[k / 2 - 1] + values[k / 2]) / 2.0
    }
}

pub fn summarize(trials: &[Trial]) -> Summary {
    let mut dom: Vec<f64> = trials
        .iter()
        .map(|t| permqm::exactnum::rational_to_f64(&t.dominance.probability))
        .collect();
    let mut base: Vec<f64> = trials.iter().map(|t| t.baseline).collect();
    let inv: Vec<f64> = trials
        .iter()
        .filter_map(|t| t.base.map(|b| b.max_cycle() as f64))
        .collect();
    Summary {
        trials: trials.len(),
        median_dominant: median(&mut dom),
        median_baseline: median(&mut base),
        mean_inverse_base: (!inv.is_empty()).then(|| inv.iter().sum::<f64>() / inv.len() as f64),
    }
}
