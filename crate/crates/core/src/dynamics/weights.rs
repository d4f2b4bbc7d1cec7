//! Weighted transition probabilities `P_k = Σ_m w_km tr(U_km ρ_{k-1} U_km† ρ_k)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::BigRational;
use crate::perm::Permutation;
use crate::repstate::{DensityMatrix, NaturalVector, Representation};
use crate::rng::stream;

use super::step::{check_dim, clamp_probability, prob_step, trace_product, unitary_of};

/// Tolerance on `Σ w = 1` for explicit float weights.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Largest degree for which all of S_N is enumerated.
pub const ENUMERATION_MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightScheme {
    /// Group elements with nonnegative weights summing to one.
    Explicit(Vec<(Permutation, f64)>),
    /// Uniform weights over S_N, estimated from `samples` uniform draws.
    /// Draw `i` uses the random stream `(seed, i)`.
    Uniform { samples: usize, seed: u64 },
}

impl WeightScheme {
    pub fn explicit(entries: Vec<(Permutation, f64)>) -> Result<Self> {
        let Some((first, _)) = entries.first() else {
            return Err(Error::InvalidWeights("empty scheme".into()));
        };
        let degree = first.degree();
        let mut total = 0.0;
        for (p, w) in &entries {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: p.degree(),
                });
            }
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::InvalidWeights(format!("weight {w} of {p}")));
            }
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(WeightScheme::Explicit(entries))
    }

    pub fn uniform(samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidWeights(
                "uniform scheme needs at least one sample".into(),
            ));
        }
        Ok(WeightScheme::Uniform { samples, seed })
    }

    /// Every element of S_N with weight `1/N!`.
    pub fn uniform_exact(degree: usize) -> Result<Self> {
        if degree > ENUMERATION_MAX_DEGREE {
            return Err(Error::TooLarge {
                n: degree,
                cap: ENUMERATION_MAX_DEGREE,
            });
        }
        let all: Vec<Permutation> = Permutation::all(degree).collect();
        let w = 1.0 / all.len() as f64;
        Ok(WeightScheme::Explicit(
            all.into_iter().map(|p| (p, w)).collect(),
        ))
    }
}

impl fmt::Display for WeightScheme {
    /// Explicit schemes print in the weight-file format; uniform schemes as
    /// `uniform samples=<s> seed=<seed>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightScheme::Explicit(entries) => {
                for (p, w) in entries {
                    writeln!(f, "{p} {w:?}")?;
                }
                Ok(())
            }
            WeightScheme::Uniform { samples, seed } => {
                write!(f, "uniform samples={samples} seed={seed}")
            }
        }
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    /// One element per line, 1-based images then the weight: `2 1 3 0.25`.
    /// Blank lines and lines starting with `#` are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (images, weight) = line.rsplit_once(char::is_whitespace).ok_or_else(|| {
                Error::Parse(format!("line {}: expected images and a weight", lineno + 1))
            })?;
            let p: Permutation = images.parse()?;
            let w: f64 = weight
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad weight {weight:?}", lineno + 1)))?;
            entries.push((p, w));
        }
        WeightScheme::explicit(entries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEstimate {
    pub value: f64,
    /// Standard error of a Monte Carlo estimate; `None` for exact sums.
    pub std_error: Option<f64>,
    pub samples: usize,
}

/// Weighted step probability between two density matrices.
pub fn prob_step_weighted(
    scheme: &WeightScheme,
    rho_prev: &DensityMatrix,
    rho_next: &DensityMatrix,
) -> Result<WeightedEstimate> {
    let dim = rho_prev.dim();
    check_dim(dim, rho_next.dim())?;
    let term =
        |p: &Permutation| trace_product(&unitary_of(p), rho_prev.matrix(), rho_next.matrix());
    match scheme {
        WeightScheme::Explicit(entries) => {
            if entries.is_empty() {
                return Err(Error::InvalidWeights("empty scheme".into()));
            }
            let mut value = 0.0;
            for (p, w) in entries {
                check_dim(dim, p.degree())?;
                value += w * term(p);
            }
            Ok(WeightedEstimate {
                value: clamp_probability(value)?,
                std_error: None,
                samples: entries.len(),
            })
        }
        WeightScheme::Uniform { samples, seed } => {
            if *samples == 0 {
                return Err(Error::InvalidWeights(
                    "uniform scheme needs at least one sample".into(),
                ));
            }
            let draws: Vec<f64> = (0..*samples)
                .map(|i| Permutation::random(dim, &mut stream(*seed, i as u64)).map(|p| term(&p)))
                .collect::<Result<_>>()?;
            let n = draws.len() as f64;
            let mean = draws.iter().sum::<f64>() / n;
            let std_error = if draws.len() > 1 {
                let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
                (var / n).sqrt()
            } else {
                f64::INFINITY
            };
            Ok(WeightedEstimate {
                value: clamp_probability(mean)?,
                std_error: Some(std_error),
                samples: *samples,
            })
        }
    }
}

/// All of S_N with weight `1/N!`, exactly.
pub fn uniform_weights(degree: usize) -> Result<Vec<(Permutation, BigRational)>> {
    if degree > ENUMERATION_MAX_DEGREE {
        return Err(Error::TooLarge {
            n: degree,
            cap: ENUMERATION_MAX_DEGREE,
        });
    }
    let factorial: BigUint = (1..=degree as u64).product();
    let w = BigRational::new(BigInt::one(), BigInt::from(factorial));
    Ok(Permutation::all(degree).map(|p| (p, w.clone())).collect())
}

/// Exact weighted step probability between natural vectors.
pub fn prob_step_weighted_exact(
    weights: &[(Permutation, BigRational)],
    n_prev: &NaturalVector,
    n_next: &NaturalVector,
    rep: Representation,
) -> Result<BigRational> {
    if weights.is_empty() {
        return Err(Error::InvalidWeights("empty scheme".into()));
    }
    let mut total = BigRational::zero();
    let mut mass = BigRational::zero();
    for (p, w) in weights {
        if w < &BigRational::zero() {
            return Err(Error::InvalidWeights(format!("weight {w} of {p}")));
        }
        total += w * prob_step(p, n_prev, n_next, rep)?;
        mass += w;
    }
    if !mass.is_one() {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {}",
            mass.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(total)
}
