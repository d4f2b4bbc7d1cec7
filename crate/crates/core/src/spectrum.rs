//! Energy content of a permutation.
//!
//! The unitary of a cycle of length `ℓ` has eigenvalues `exp(2πi j/ℓ)`,
//! `j = 0..ℓ`, so with `H = i ln U` (units where `h = 1`) the Hamiltonian of a
//! permutation of cycle type `{ℓ_1^{r_1}, …, ℓ_K^{r_K}}` is block diagonal,
//! `r_k` copies of `diag(0, 1, …, ℓ_k - 1)/ℓ_k` per cycle length. The least
//! nonzero level is the base energy `1/max ℓ_k`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::BigRational;
use crate::linalg::{c, CMatrix};
use crate::perm::Permutation;

/// Largest degree accepted by [`permutation_matrix`] unless overridden.
pub const DEFAULT_MATRIX_CAP: usize = 64;

/// Energy levels `j/ℓ ∈ [0, 1)` with multiplicities, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergySpectrum {
    levels: Vec<(BigRational, usize)>,
}

impl EnergySpectrum {
    pub fn levels(&self) -> &[(BigRational, usize)] {
        &self.levels
    }

    /// Total multiplicity, equal to the degree of the source permutation.
    pub fn degree(&self) -> usize {
        self.levels.iter().map(|(_, m)| m).sum()
    }

    /// Levels repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<BigRational> {
        self.levels
            .iter()
            .flat_map(|(e, m)| std::iter::repeat_n(e.clone(), *m))
            .collect()
    }

    pub fn least_nonzero(&self) -> Option<&BigRational> {
        self.levels.iter().map(|(e, _)| e).find(|e| !e.is_zero())
    }
}

impl fmt::Display for EnergySpectrum {
    /// `0(x2) 1/3(x1) 1/2(x1) 2/3(x1)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, m)) in self.levels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}(x{m})")?;
        }
        Ok(())
    }
}

pub fn spectrum_of(p: &Permutation) -> EnergySpectrum {
    let mut levels: BTreeMap<BigRational, usize> = BTreeMap::new();
    for &(len, mult) in p.cycle_type().pairs() {
        for j in 0..len {
            *levels
                .entry(BigRational::new(BigInt::from(j), BigInt::from(len)))
                .or_default() += mult;
        }
    }
    EnergySpectrum {
        levels: levels.into_iter().collect(),
    }
}

/// `1/ℓ_max` for a permutation with a cycle of length `ℓ_max ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseEnergy {
    max_cycle: usize,
}

impl BaseEnergy {
    pub fn from_max_cycle(max_cycle: usize) -> Option<Self> {
        (max_cycle >= 2).then_some(BaseEnergy { max_cycle })
    }

    pub fn max_cycle(self) -> usize {
        self.max_cycle
    }

    pub fn value(self) -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(self.max_cycle))
    }

    pub fn to_f64(self) -> f64 {
        1.0 / self.max_cycle as f64
    }
}

impl fmt::Display for BaseEnergy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.max_cycle)
    }
}

/// Base energy, or `None` for the identity, which has no nonzero level.
pub fn base_energy(p: &Permutation) -> Option<BaseEnergy> {
    BaseEnergy::from_max_cycle(p.max_cycle_length())
}

/// The 0/1 matrix `M` with `M e_i = e_{p(i)}`, so `M v = p·v`.
pub fn permutation_matrix(p: &Permutation, cap: usize) -> Result<DMatrix<f64>> {
    let n = p.degree();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(p.image(i), i)] = 1.0;
    }
    Ok(m)
}

/// `φ/2π` for the rotated Hermitian part in [`eigenphases`]. Twice this is
/// `√5 - 2`, badly approximable by rationals, so no two distinct roots of
/// unity of small order are mapped to the same real eigenvalue.
const PHASE_OFFSET: f64 = 0.118_033_988_749_894_85;

/// Eigenphases `arg(λ)/2π mod 1` of a unitary matrix, ascending in `[0, 1)`.
///
/// Computed from the Hermitian matrix `(e^{-iφ}U + e^{iφ}U†)/2`, whose
/// eigenvectors are eigenvectors of the normal matrix `U`; each phase is read
/// off the Rayleigh quotient `v†Uv`. The QR iteration used for general real
/// matrices stalls on cyclic permutation matrices, the Hermitian solver
/// does not.
pub fn eigenphases(u: &CMatrix) -> Vec<f64> {
    let rot = Complex64::from_polar(1.0, -std::f64::consts::TAU * PHASE_OFFSET);
    let h = (u * rot + u.adjoint() * rot.conj()) * c(0.5);
    let eig = h.symmetric_eigen();
    let mut phases: Vec<f64> = eig
        .eigenvectors
        .column_iter()
        .map(|v| {
            let lambda = v.dotc(&(u * v));
            let phase = (lambda.im.atan2(lambda.re) / std::f64::consts::TAU).rem_euclid(1.0);
            // rem_euclid can round up to exactly 1.0 for tiny negative angles.
            if phase >= 1.0 {
                0.0
            } else {
                phase
            }
        })
        .collect();
    phases.sort_by(f64::total_cmp);
    phases
}

/// Largest deviation between numeric eigenphases of the permutation matrix
/// and the exact levels of [`spectrum_of`].
/// Fails when the counts differ.
pub fn eigenphase_deviation(p: &Permutation, cap: usize) -> Result<f64> {
    let m = crate::linalg::from_real(&permutation_matrix(p, cap)?);
    let mut numeric = eigenphases(&m);
    // Phases just below 1 belong to level 0.
    for x in numeric.iter_mut() {
        if *x > 1.0 - 1e-6 {
            *x -= 1.0;
        }
    }
    numeric.sort_by(f64::total_cmp);
    let exact = spectrum_of(p).expanded();
    if exact.len() != numeric.len() {
        return Err(Error::DimensionMismatch {
            left: exact.len(),
            right: numeric.len(),
        });
    }
    Ok(exact
        .iter()
        .zip(&numeric)
        .map(|(e, x)| (e.to_f64().unwrap() - x).abs())
        .fold(0.0, f64::max))
}

/// Aggregated energy levels (weighted by multiplicity) and base energies of a
/// sample of permutations. Merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnergyHistogram {
    levels: BTreeMap<BigRational, u64>,
    base: BTreeMap<BaseEnergy, u64>,
    without_base: u64,
    samples: u64,
}

impl EnergyHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_permutations<'a>(perms: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut h = Self::new();
        for p in perms {
            h.add(p);
        }
        h
    }

    pub fn add(&mut self, p: &Permutation) {
        for (e, m) in spectrum_of(p).levels {
            *self.levels.entry(e).or_default() += m as u64;
        }
        match base_energy(p) {
            Some(b) => *self.base.entry(b).or_default() += 1,
            None => self.without_base += 1,
        }
        self.samples += 1;
    }

    pub fn merge(&mut self, other: &EnergyHistogram) {
        for (e, n) in &other.levels {
            *self.levels.entry(e.clone()).or_default() += n;
        }
        for (b, n) in &other.base {
            *self.base.entry(*b).or_default() += n;
        }
        self.without_base += other.without_base;
        self.samples += other.samples;
    }

    pub fn levels(&self) -> &BTreeMap<BigRational, u64> {
        &self.levels
    }

    /// Base-energy counts, keyed in ascending energy (descending cycle length).
    pub fn base_energies(&self) -> impl Iterator<Item = (BaseEnergy, u64)> + '_ {
        self.base.iter().rev().map(|(b, n)| (*b, *n))
    }

    /// Samples whose permutation was the identity.
    pub fn without_base(&self) -> u64 {
        self.without_base
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    /// Σ counts over levels; `samples × N` for samples from S_N.
    pub fn level_mass(&self) -> u64 {
        self.levels.values().sum()
    }

    /// Mean of `1/ε` (the maximal cycle length) over samples with a base energy.
    pub fn mean_inverse_base(&self) -> Option<f64> {
        let count: u64 = self.base.values().sum();
        (count > 0).then(|| {
            self.base
                .iter()
                .map(|(b, n)| b.max_cycle as f64 * *n as f64)
                .sum::<f64>()
                / count as f64
        })
    }

    /// Most frequent base energy; ties go to the smaller energy.
    pub fn base_mode(&self) -> Option<BaseEnergy> {
        self.base_energies()
            .max_by_key(|&(b, n)| (n, b.max_cycle))
            .map(|(b, _)| b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn spectra_from_block_formula() {
        let id = spectrum_of(&Permutation::identity(4));
        assert_eq!(id.levels(), &[(q(0, 1), 4)]);
        let c3 = spectrum_of(&Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        assert_eq!(c3.levels(), &[(q(0, 1), 1), (q(1, 3), 1), (q(2, 3), 1)]);
        let mixed = spectrum_of(&Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap());
        assert_eq!(
            mixed.levels(),
            &[(q(0, 1), 2), (q(1, 3), 1), (q(1, 2), 1), (q(2, 3), 1)]
        );
        assert_eq!(mixed.to_string(), "0(x2) 1/3(x1) 1/2(x1) 2/3(x1)");
    }

    #[test]
    fn base_energies() {
        assert_eq!(base_energy(&Permutation::identity(6)), None);
        let long: Vec<usize> = (1..=61).collect();
        let p = Permutation::from_cycles(100, &[&long]).unwrap();
        assert_eq!(base_energy(&p).unwrap().value(), q(1, 61));
        assert_eq!(base_energy(&p).unwrap().to_string(), "1/61");
        let mixed = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(base_energy(&mixed).unwrap().value(), q(1, 3));
    }

    #[test]
    fn matrices() {
        let m = permutation_matrix(&Permutation::identity(5), DEFAULT_MATRIX_CAP).unwrap();
        assert_eq!(m, DMatrix::identity(5, 5));
        for p in Permutation::all(4) {
            let det = permutation_matrix(&p, 64).unwrap().determinant();
            assert!((det - p.sign() as f64).abs() < 1e-12, "{p}");
        }
        let p: Permutation = "2 3 1".parse().unwrap();
        let m = permutation_matrix(&p, 64).unwrap();
        let v = nalgebra::DVector::from_vec(vec![7.0, 1.0, 3.0]);
        assert_eq!(
            (m * v).as_slice(),
            p.apply(&[7.0, 1.0, 3.0]).unwrap().as_slice()
        );
        assert_eq!(
            permutation_matrix(&Permutation::identity(65), DEFAULT_MATRIX_CAP).unwrap_err(),
            Error::TooLarge { n: 65, cap: 64 }
        );
    }

    #[test]
    fn eigenphases_of_even_cycles() {
        for n in [2usize, 6, 8, 12, 32, 64] {
            let cyc: Vec<usize> = (1..=n).collect();
            let p = Permutation::from_cycles(n, &[&cyc]).unwrap();
            assert!(eigenphase_deviation(&p, 64).unwrap() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn eigenphases_agree_on_all_of_s6() {
        for p in Permutation::all(6) {
            assert!(eigenphase_deviation(&p, 64).unwrap() < 1e-9, "{p}");
        }
    }

    #[test]
    fn histogram_aggregation() {
        let h = EnergyHistogram::from_permutations([&Permutation::identity(3)]);
        assert_eq!(h.levels().iter().collect::<Vec<_>>(), vec![(&q(0, 1), &3)]);
        assert_eq!(h.without_base(), 1);

        let p = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        let h = EnergyHistogram::from_permutations([&p, &p]);
        assert_eq!(h.levels().get(&q(0, 1)), Some(&4));
        assert_eq!(h.levels().get(&q(1, 2)), Some(&4));
        assert_eq!(h.level_mass(), 8);
        assert_eq!(h.base_mode().unwrap().to_string(), "1/2");
    }

    #[test]
    fn histogram_merge_matches_sequential() {
        let mut rng = stream(4, 0);
        let perms: Vec<_> = (0..40)
            .map(|_| Permutation::random(9, &mut rng).unwrap())
            .collect();
        let whole = EnergyHistogram::from_permutations(&perms);
        let mut left = EnergyHistogram::from_permutations(&perms[20..]);
        left.merge(&EnergyHistogram::from_permutations(&perms[..20]));
        assert_eq!(left, whole);
        assert_eq!(whole.level_mass(), 40 * 9);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn spectrum_is_a_class_function((p, g) in (1usize..30).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))) {
            let conj = g.compose(&p).unwrap().compose(&g.inverse()).unwrap();
            prop_assert_eq!(spectrum_of(&conj), spectrum_of(&p));
        }

        #[test]
        fn spectrum_structure(p in (1usize..40).prop_flat_map(arb_perm)) {
            let s = spectrum_of(&p);
            prop_assert_eq!(s.degree(), p.degree());
            let zero = &s.levels()[0];
            prop_assert!(zero.0.is_zero());
            prop_assert!(zero.1 >= p.cycle_type().pairs().len());
            prop_assert!(s.levels().iter().all(|(e, _)| *e >= q(0, 1) && *e < q(1, 1)));
            let base = base_energy(&p).map(BaseEnergy::value);
            prop_assert_eq!(base.as_ref(), s.least_nonzero());
        }
    }
}
