//! States as natural vectors and their Born probabilities in the natural and
//! standard representations of S_N.
//!
//! A natural vector `n ∈ ℕ^N` counts entities of each of `N` types. The
//! natural representation permutes coordinates; it splits into the trivial
//! line spanned by `(1, …, 1)` and the `(N-1)`-dimensional standard subspace
//! of zero-sum vectors. Born probabilities are squared cosines between
//! vectors, taken after projecting onto the standard subspace for the
//! standard representation:
//!
//! ```text
//! P_nat(n, m) = ⟨n|m⟩² / (⟨n|n⟩ ⟨m|m⟩)
//! P_std(n, m) = (⟨n|m⟩ - ⟨n|1⟩⟨1|m⟩/N)² / ((⟨n|n⟩ - ⟨n|1⟩²/N) (⟨m|m⟩ - ⟨m|1⟩²/N))
//! ```
//!
//! Both are computed exactly as [`BigRational`]s.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{rational_to_f64, BigRational};
use crate::linalg::hermitian_residual;
use crate::perm::{Permutation, SortOrder};

/// Which irreducible piece of the permutation module a probability is
/// measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Natural,
    Standard,
}

impl Representation {
    /// Born probability of `n` against `m` in this representation.
    pub fn probability(self, n: &NaturalVector, m: &NaturalVector) -> Result<BigRational> {
        match self {
            Representation::Natural => p_nat(n, m),
            Representation::Standard => p_std(n, m),
        }
    }

    /// Checks that `v` is a legal state: nonzero for the natural
    /// representation, nonconstant for the standard one.
    pub fn validate(self, v: &NaturalVector) -> Result<()> {
        match self {
            Representation::Natural if v.is_zero() => Err(Error::ZeroVector),
            Representation::Standard if v.is_constant() => Err(Error::ConstantVector),
            _ => Ok(()),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Representation::Natural => "nat",
            Representation::Standard => "std",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Natural => "natural",
            Representation::Standard => "standard",
        })
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nat" | "natural" => Ok(Representation::Natural),
            "std" | "standard" => Ok(Representation::Standard),
            other => Err(Error::Parse(format!("unknown representation {other:?}"))),
        }
    }
}

/// Element of ℕ^N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NaturalVector {
    components: Vec<BigUint>,
}

impl NaturalVector {
    pub fn new(components: Vec<BigUint>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidSize(
                "natural vector must have at least one component".into(),
            ));
        }
        Ok(NaturalVector { components })
    }

    pub fn from_u64s(components: &[u64]) -> Result<Self> {
        Self::new(components.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn constant(degree: usize, value: u64) -> Self {
        NaturalVector {
            components: vec![BigUint::from(value); degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[BigUint] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.components.windows(2).all(|w| w[0] == w[1])
    }

    pub fn sum(&self) -> BigUint {
        self.components.iter().sum()
    }

    /// Componentwise `self + c·1`.
    pub fn shifted(&self, c: u64) -> NaturalVector {
        NaturalVector {
            components: self.components.iter().map(|x| x + c).collect(),
        }
    }

    /// The permutation sorting this vector, ties kept in place.
    pub fn sorting_permutation(&self, order: SortOrder) -> Permutation {
        Permutation::sorting(&self.components, order)
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// Components i.i.d. uniform on `{0..=cmax}`; a constant draw is
    /// rejected and redrawn.
    pub fn random<R: Rng + ?Sized>(degree: usize, cmax: u64, rng: &mut R) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidSize(format!("degree {degree} < 2")));
        }
        if cmax < 1 {
            return Err(Error::InvalidSize("cmax must be at least 1".into()));
        }
        loop {
            let v = NaturalVector {
                components: (0..degree)
                    .map(|_| BigUint::from(rng.random_range(0..=cmax)))
                    .collect(),
            };
            if !v.is_constant() {
                return Ok(v);
            }
        }
    }
}

impl fmt::Display for NaturalVector {
    /// Whitespace-separated decimal components.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NaturalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NaturalVector({self})")
    }
}

impl FromStr for NaturalVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split_whitespace()
            .map(|t| {
                t.parse::<BigUint>()
                    .map_err(|e| Error::Parse(format!("vector component {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }
}

/// `p·v` under the crate-wide action convention.
pub fn apply_perm(p: &Permutation, v: &NaturalVector) -> Result<NaturalVector> {
    Ok(NaturalVector {
        components: p.apply(&v.components)?,
    })
}

fn check_degrees(a: &NaturalVector, b: &NaturalVector) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

/// Exact `⟨a|b⟩`.
pub fn inner(a: &NaturalVector, b: &NaturalVector) -> Result<BigUint> {
    check_degrees(a, b)?;
    Ok(a.components
        .iter()
        .zip(&b.components)
        .map(|(x, y)| x * y)
        .sum())
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn p_nat(n: &NaturalVector, m: &NaturalVector) -> Result<BigRational> {
    check_degrees(n, m)?;
    if n.is_zero() || m.is_zero() {
        return Err(Error::ZeroVector);
    }
    let nm = inner(n, m)?;
    Ok(ratio(&nm * &nm, inner(n, n)? * inner(m, m)?))
}

/// `N·⟨n|m⟩ - ⟨n|1⟩⟨1|m⟩`, the standard-subspace inner product scaled by `N`.
pub(crate) fn centered_inner_scaled(n: &NaturalVector, m: &NaturalVector) -> Result<BigInt> {
    let deg = BigInt::from(n.degree());
    Ok(deg * BigInt::from(inner(n, m)?) - BigInt::from(n.sum() * m.sum()))
}

/// Signed numerator `⟨n|m⟩ - ⟨n|1⟩⟨1|m⟩/N` of the standard-representation
/// probability. Its sign tells whether the projected vectors point the same
/// way.
pub fn std_numerator(n: &NaturalVector, m: &NaturalVector) -> Result<BigRational> {
    check_degrees(n, m)?;
    Ok(BigRational::new(
        centered_inner_scaled(n, m)?,
        BigInt::from(n.degree()),
    ))
}

pub fn p_std(n: &NaturalVector, m: &NaturalVector) -> Result<BigRational> {
    check_degrees(n, m)?;
    if n.is_constant() || m.is_constant() {
        return Err(Error::ConstantVector);
    }
    // Scaling every centered product by N cancels in the ratio.
    let num = centered_inner_scaled(n, m)?;
    let dn = centered_inner_scaled(n, n)?;
    let dm = centered_inner_scaled(m, m)?;
    Ok(BigRational::new(&num * &num, dn * dm))
}

/// Orthogonal projection onto the zero-sum subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedState {
    components: Vec<BigRational>,
}

impl ProjectedState {
    pub fn components(&self) -> &[BigRational] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.components.iter().map(rational_to_f64).collect()
    }
}

pub fn project_std(n: &NaturalVector) -> ProjectedState {
    let mean = BigRational::new(BigInt::from(n.sum()), BigInt::from(n.degree()));
    ProjectedState {
        components: n
            .components
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.clone())) - &mean)
            .collect(),
    }
}

/// Density matrix `ρ`: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
pub const DENSITY_EIGEN_TOL: f64 = 1e-10;

impl DensityMatrix {
    /// Validates the density-matrix axioms.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidDensity(format!(
                "shape {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermitian_residual(&matrix);
        if herm > DENSITY_HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let min_eig = matrix.clone().symmetric_eigenvalues().min();
        if min_eig < -DENSITY_EIGEN_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Rank-one projector onto the normalized `psi`.
    pub fn pure(psi: &DVector<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let unit = psi / Complex64::new(norm, 0.0);
        let matrix = &unit * unit.adjoint();
        // Hermitian by construction; symmetrize away rounding.
        let matrix = (&matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(DensityMatrix { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `tr(ρ²)`; 1 for pure states.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub(crate) fn from_unchecked(matrix: DMatrix<Complex64>) -> Self {
        DensityMatrix { matrix }
    }
}

/// Input accepted by [`pure_density`].
pub enum StateVector<'a> {
    Natural(&'a NaturalVector),
    Projected(&'a ProjectedState),
}

impl<'a> From<&'a NaturalVector> for StateVector<'a> {
    fn from(v: &'a NaturalVector) -> Self {
        StateVector::Natural(v)
    }
}

impl<'a> From<&'a ProjectedState> for StateVector<'a> {
    fn from(v: &'a ProjectedState) -> Self {
        StateVector::Projected(v)
    }
}

pub fn pure_density<'a>(v: impl Into<StateVector<'a>>) -> Result<DensityMatrix> {
    let reals = match v.into() {
        StateVector::Natural(n) => n.to_f64s(),
        StateVector::Projected(p) => {
            if p.is_zero() {
                return Err(Error::ZeroVector);
            }
            p.to_f64s()
        }
    };
    DensityMatrix::pure(&DVector::from_iterator(
        reals.len(),
        reals.into_iter().map(|x| Complex64::new(x, 0.0)),
    ))
}

/// Density matrix of `v` as seen by the representation: the vector itself
/// for the natural representation, its standard projection otherwise.
pub fn state_density(v: &NaturalVector, rep: Representation) -> Result<DensityMatrix> {
    rep.validate(v)?;
    match rep {
        Representation::Natural => pure_density(v),
        Representation::Standard => pure_density(&project_std(v)),
    }
}
