use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ln_rational, BigRational};

use super::model::EvolutionModel;

/// `ΔS = -ln P`. `P = 0` gives `f64::INFINITY`.
///
/// ```
/// use permqm::dynamics::step_entropy;
/// assert_eq!(step_entropy(1.0).unwrap(), 0.0);
/// assert!((step_entropy(std::f64::consts::E.recip()).unwrap() - 1.0).abs() < 1e-15);
/// assert_eq!(step_entropy(0.0).unwrap(), f64::INFINITY);
/// ```
pub fn step_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidWeights(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    Ok(if p == 0.0 { f64::INFINITY } else { -p.ln() })
}

/// [`step_entropy`] of an exact probability, accurate even when `P` is
/// below the smallest positive `f64`.
pub fn step_entropy_exact(p: &BigRational) -> Result<f64> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::InvalidWeights(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    if p.is_zero() {
        return Ok(f64::INFINITY);
    }
    Ok(-ln_rational(p))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryEntropy {
    /// `Σ ΔS_k`.
    pub entropy: f64,
    /// `Π P_k`.
    pub probability: BigRational,
    pub steps: Vec<f64>,
}

/// Entropy of a trajectory, the sum of its step entropies. A step of
/// probability zero is an error, carrying the 0-based transition index.
pub fn trajectory_entropy(model: &EvolutionModel) -> Result<TrajectoryEntropy> {
    let probs = model.step_probabilities()?;
    let mut steps = Vec::with_capacity(probs.len());
    let mut probability = BigRational::one();
    for (k, p) in probs.iter().enumerate() {
        if p.is_zero() {
            return Err(Error::ZeroProbability(k));
        }
        steps.push(step_entropy_exact(p)?);
        probability *= p;
    }
    Ok(TrajectoryEntropy {
        entropy: steps.iter().sum(),
        probability,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ObservationSchedule;
    use crate::perm::Permutation;
    use crate::repstate::{NaturalVector, Representation};
    use crate::rng::stream;

    #[test]
    fn step_values() {
        assert_eq!(step_entropy(1.0).unwrap(), 0.0);
        assert!((step_entropy(0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(step_entropy(1.5).is_err());
        assert!(step_entropy(-0.1).is_err());
        assert!(step_entropy(f64::NAN).is_err());
        let half = BigRational::new(1.into(), 2.into());
        assert!((step_entropy_exact(&half).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(
            step_entropy_exact(&BigRational::zero()).unwrap(),
            f64::INFINITY
        );
        let tiny = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(400));
        assert!((step_entropy_exact(&tiny).unwrap() - 400.0 * 10f64.ln()).abs() < 1e-9);
    }

    fn nv(c: &[u64]) -> NaturalVector {
        NaturalVector::from_u64s(c).unwrap()
    }

    #[test]
    fn two_half_steps() {
        // ⟨(1,1)|(1,0)⟩² / (2·1) = 1/2 in the natural representation.
        let a = nv(&[1, 1]);
        let b = nv(&[1, 0]);
        let model = EvolutionModel::new(
            ObservationSchedule::consecutive(2).unwrap(),
            vec![a.clone(), b, a],
            vec![Permutation::identity(2); 2],
            Representation::Natural,
        )
        .unwrap();
        let t = trajectory_entropy(&model).unwrap();
        assert!((t.entropy - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(t.probability, BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn trivial_and_orthogonal() {
        let a = nv(&[3, 0, 1]);
        let model = EvolutionModel::new(
            ObservationSchedule::new(vec![0, 5, 9]).unwrap(),
            vec![a.clone(); 3],
            vec![Permutation::identity(3); 2],
            Representation::Natural,
        )
        .unwrap();
        assert_eq!(trajectory_entropy(&model).unwrap().entropy, 0.0);

        let model = EvolutionModel::new(
            ObservationSchedule::consecutive(2).unwrap(),
            vec![a.clone(), a.clone(), nv(&[0, 2, 0])],
            vec![Permutation::identity(3); 2],
            Representation::Natural,
        )
        .unwrap();
        assert_eq!(
            trajectory_entropy(&model).unwrap_err(),
            Error::ZeroProbability(1)
        );
    }

    #[test]
    fn entropy_is_log_of_product() {
        let mut rng = stream(21, 0);
        for _ in 0..20 {
            let states: Vec<_> = (0..5)
                .map(|_| NaturalVector::random(6, 20, &mut rng).unwrap())
                .collect();
            let transitions: Vec<_> = (0..4)
                .map(|_| Permutation::random(6, &mut rng).unwrap())
                .collect();
            let model = EvolutionModel::new(
                ObservationSchedule::consecutive(4).unwrap(),
                states,
                transitions,
                Representation::Natural,
            )
            .unwrap();
            let t = trajectory_entropy(&model).unwrap();
            assert!((t.entropy + ln_rational(&t.probability)).abs() < 1e-12);
            assert_eq!(t.probability, model.trajectory_probability().unwrap());
        }
    }
}
