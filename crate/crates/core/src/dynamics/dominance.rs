//! Dominant evolutions: the permutations maximizing the single-step
//! probability between two states.
//!
//! Aligning the orders of the components maximizes `⟨U n|m⟩` (rearrangement
//! inequality), so `U = R_m⁻¹ R_n` with `R_v` sorting `v`. In the standard
//! representation the squared numerator may instead be maximized by the most
//! negative overlap, reached by sorting `m` the opposite way; both candidates
//! are evaluated exactly.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::BigRational;
use crate::perm::{Permutation, SortOrder};
use crate::repstate::{centered_inner_scaled, inner, NaturalVector, Representation};

use super::step::prob_step;

/// Whether `m` is sorted the same way as `n` or the opposite way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Identical,
    Opposite,
    Tie,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Identical => "identical",
            Orientation::Opposite => "opposite",
            Orientation::Tie => "tie",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identical" => Ok(Orientation::Identical),
            "opposite" => Ok(Orientation::Opposite),
            "tie" => Ok(Orientation::Tie),
            other => Err(Error::Parse(format!("unknown orientation {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceResult {
    pub dominant: Permutation,
    pub orientation: Orientation,
    pub probability: BigRational,
    /// For [`dominant_evolution`], the probability of the other orientation;
    /// for [`brute_force_dominant`], the largest value strictly below the
    /// maximum. `None` when there is no such candidate.
    pub runner_up: Option<BigRational>,
}

/// `R_m⁻¹ R_n`, with `m` sorted in `order` and `n` ascending.
fn aligned(n: &NaturalVector, m: &NaturalVector, order: SortOrder) -> Result<Permutation> {
    let rn = n.sorting_permutation(SortOrder::Ascending);
    let rm = m.sorting_permutation(order);
    rm.inverse().compose(&rn)
}

/// Closed-form dominant evolution.
///
/// ```
/// use permqm::dynamics::{dominant_evolution, Orientation};
/// use permqm::repstate::Representation;
///
/// let n = "2 1 1".parse().unwrap();
/// let m = "0 1 3".parse().unwrap();
/// let d = dominant_evolution(&n, &m, Representation::Standard).unwrap();
/// assert_eq!(d.orientation, Orientation::Identical);
/// assert_eq!(d.probability.to_string(), "25/28");
/// ```
pub fn dominant_evolution(
    n: &NaturalVector,
    m: &NaturalVector,
    rep: Representation,
) -> Result<DominanceResult> {
    if n.degree() != m.degree() {
        return Err(Error::DegreeMismatch {
            left: n.degree(),
            right: m.degree(),
        });
    }
    rep.validate(n)?;
    rep.validate(m)?;
    let same = aligned(n, m, SortOrder::Ascending)?;
    let p_same = prob_step(&same, n, m, rep)?;
    match rep {
        Representation::Natural => Ok(DominanceResult {
            dominant: same,
            orientation: Orientation::Identical,
            probability: p_same,
            runner_up: None,
        }),
        Representation::Standard => {
            let opp = aligned(n, m, SortOrder::Descending)?;
            let p_opp = prob_step(&opp, n, m, rep)?;
            Ok(match p_same.cmp(&p_opp) {
                std::cmp::Ordering::Less => DominanceResult {
                    dominant: opp,
                    orientation: Orientation::Opposite,
                    probability: p_opp,
                    runner_up: Some(p_same),
                },
                std::cmp::Ordering::Equal => DominanceResult {
                    dominant: same,
                    orientation: Orientation::Tie,
                    probability: p_same,
                    runner_up: Some(p_opp),
                },
                std::cmp::Ordering::Greater => DominanceResult {
                    dominant: same,
                    orientation: Orientation::Identical,
                    probability: p_same,
                    runner_up: Some(p_opp),
                },
            })
        }
    }
}

/// Largest degree accepted by [`brute_force_dominant`].
pub const BRUTE_FORCE_MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceDominance {
    /// The lexicographically smallest maximizer.
    pub result: DominanceResult,
    /// Number of permutations attaining the maximum.
    pub argmax_count: usize,
    /// Number of distinct vectors `U·n` among them.
    pub distinct_images: usize,
}

/// Maximum of `|overlap|` over S_N, where the probability is `overlap²`
/// over a permutation-independent constant.
struct Scan<K> {
    best: K,
    first: Permutation,
    runner: Option<K>,
    count: usize,
    images: HashSet<Vec<usize>>,
    max_signed: K,
    min_signed: K,
}

fn scan<K: Signed + Ord + Clone>(
    n: &NaturalVector,
    overlap: impl Fn(&Permutation) -> K,
) -> Scan<K> {
    let mut perms = Permutation::all(n.degree());
    let first = perms.next().expect("S_N is nonempty");
    let signed = overlap(&first);
    let mut s = Scan {
        best: signed.abs(),
        images: HashSet::from([image_key(&first, n)]),
        first,
        runner: None,
        count: 1,
        max_signed: signed.clone(),
        min_signed: signed,
    };
    for p in perms {
        let signed = overlap(&p);
        let key = signed.abs();
        if signed > s.max_signed {
            s.max_signed = signed.clone();
        }
        if signed < s.min_signed {
            s.min_signed = signed;
        }
        match key.cmp(&s.best) {
            std::cmp::Ordering::Greater => {
                s.runner = Some(std::mem::replace(&mut s.best, key));
                s.first = p.clone();
                s.count = 1;
                s.images.clear();
                s.images.insert(image_key(&p, n));
            }
            std::cmp::Ordering::Equal => {
                s.count += 1;
                s.images.insert(image_key(&p, n));
            }
            std::cmp::Ordering::Less => {
                if s.runner.as_ref().is_none_or(|r| key > *r) {
                    s.runner = Some(key);
                }
            }
        }
    }
    s
}

impl<K: Into<BigInt>> Scan<K> {
    fn widen(self) -> Scan<BigInt> {
        Scan {
            best: self.best.into(),
            first: self.first,
            runner: self.runner.map(Into::into),
            count: self.count,
            images: self.images,
            max_signed: self.max_signed.into(),
            min_signed: self.min_signed.into(),
        }
    }
}

/// Exhaustive maximum of the step probability over all of S_N, for N ≤ 8.
pub fn brute_force_dominant(
    n: &NaturalVector,
    m: &NaturalVector,
    rep: Representation,
) -> Result<BruteForceDominance> {
    let degree = n.degree();
    if degree != m.degree() {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: m.degree(),
        });
    }
    if degree > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::TooLarge {
            n: degree,
            cap: BRUTE_FORCE_MAX_DEGREE,
        });
    }
    rep.validate(n)?;
    rep.validate(m)?;

    // Overlap is ⟨Un|m⟩ (natural) or N⟨Un|m⟩ - S_n S_m (standard).
    let (scale, offset) = match rep {
        Representation::Natural => (BigInt::from(1), BigInt::zero()),
        Representation::Standard => (BigInt::from(degree), BigInt::from(n.sum() * m.sum())),
    };
    let largest = |v: &NaturalVector| v.components().iter().max().cloned().unwrap_or_default();
    let bound = BigUint::from(degree * degree * 2) * largest(n) * largest(m);
    let small = |v: &NaturalVector| {
        v.components()
            .iter()
            .map(|c| c.to_i128())
            .collect::<Option<Vec<_>>>()
    };
    let s = match (bound.bits() < 120, small(n), small(m)) {
        (true, Some(ns), Some(ms)) => {
            let (scale, offset) = (scale.to_i128().unwrap(), offset.to_i128().unwrap());
            scan(n, |p| {
                // (p·n)[p(i)] = n[i]
                let dot: i128 = ns.iter().enumerate().map(|(i, x)| x * ms[p.image(i)]).sum();
                scale * dot - offset
            })
            .widen()
        }
        _ => {
            let big = |v: &NaturalVector| {
                v.components()
                    .iter()
                    .map(|c| BigInt::from(c.clone()))
                    .collect::<Vec<_>>()
            };
            let (ns, ms) = (big(n), big(m));
            scan(n, |p| {
                let dot: BigInt = ns
                    .iter()
                    .enumerate()
                    .map(|(i, x)| x * &ms[p.image(i)])
                    .sum();
                &scale * dot - &offset
            })
        }
    };

    let den: BigInt = match rep {
        Representation::Natural => BigInt::from(inner(n, n)? * inner(m, m)?),
        Representation::Standard => centered_inner_scaled(n, n)? * centered_inner_scaled(m, m)?,
    };
    let prob = |key: &BigInt| BigRational::new(key * key, den.clone());
    let orientation = match rep {
        Representation::Natural => Orientation::Identical,
        Representation::Standard => match s.max_signed.cmp(&-s.min_signed.clone()) {
            std::cmp::Ordering::Equal => Orientation::Tie,
            std::cmp::Ordering::Greater => Orientation::Identical,
            std::cmp::Ordering::Less => Orientation::Opposite,
        },
    };
    Ok(BruteForceDominance {
        result: DominanceResult {
            dominant: s.first,
            orientation,
            probability: prob(&s.best),
            runner_up: s.runner.as_ref().map(prob),
        },
        argmax_count: s.count,
        distinct_images: s.images.len(),
    })
}

/// `p·n` with components replaced by their ranks among distinct values.
fn image_key(p: &Permutation, n: &NaturalVector) -> Vec<usize> {
    let comps = n.components();
    let mut sorted: Vec<&BigUint> = comps.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut out = vec![0; comps.len()];
    for (i, c) in comps.iter().enumerate() {
        out[p.image(i)] = sorted.binary_search(&c).unwrap();
    }
    out
}
