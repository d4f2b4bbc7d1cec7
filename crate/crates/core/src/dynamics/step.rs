use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactnum::{rational_to_f64, BigRational};
use crate::linalg::{from_real, unitary_residual, CMatrix};
use crate::perm::Permutation;
use crate::repstate::{apply_perm, DensityMatrix, NaturalVector, Representation};
use crate::spectrum::permutation_matrix;

pub const UNITARY_TOL: f64 = 1e-10;
/// Slack allowed outside `[0, 1]` before clamping a float probability.
pub const PROBABILITY_SLACK: f64 = 1e-10;

/// Born probability of `U·n_prev` against `n_next`, exact.
///
/// ```
/// use permqm::dynamics::prob_step;
/// use permqm::perm::Permutation;
/// use permqm::repstate::{NaturalVector, Representation};
///
/// let n: NaturalVector = "2 1 1".parse().unwrap();
/// let m: NaturalVector = "0 1 3".parse().unwrap();
/// let swap: Permutation = "2 1 3".parse().unwrap();
/// assert_eq!(prob_step(&swap, &n, &m, Representation::Standard).unwrap().to_string(), "1/28");
/// ```
pub fn prob_step(
    u: &Permutation,
    n_prev: &NaturalVector,
    n_next: &NaturalVector,
    rep: Representation,
) -> Result<BigRational> {
    rep.probability(&apply_perm(u, n_prev)?, n_next)
}

pub fn prob_step_float(
    u: &Permutation,
    n_prev: &NaturalVector,
    n_next: &NaturalVector,
    rep: Representation,
) -> Result<f64> {
    prob_step(u, n_prev, n_next, rep).map(|p| rational_to_f64(&p))
}

/// Complex permutation matrix of `u`.
pub fn unitary_of(u: &Permutation) -> CMatrix {
    from_real(&permutation_matrix(u, usize::MAX).expect("no cap"))
}

pub(crate) fn check_unitary(u: &CMatrix) -> Result<()> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch {
            left: u.nrows(),
            right: u.ncols(),
        });
    }
    let residual = unitary_residual(u);
    if !(residual <= UNITARY_TOL) {
        return Err(Error::MatrixProperty {
            property: "unitary",
            residual,
        });
    }
    Ok(())
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch {
            left: expected,
            right: got,
        });
    }
    Ok(())
}

pub(crate) fn clamp_probability(p: f64) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::InvalidDensity(format!(
            "trace product {p} outside [0, 1]"
        )));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// `tr(ρ_{k-1}' ρ_k)` with `ρ_{k-1}' = U ρ_{k-1} U†`, clamped to `[0, 1]`.
pub fn prob_step_density(
    u: &CMatrix,
    rho_prev: &DensityMatrix,
    rho_next: &DensityMatrix,
) -> Result<f64> {
    check_unitary(u)?;
    check_dim(u.nrows(), rho_prev.dim())?;
    check_dim(u.nrows(), rho_next.dim())?;
    Ok(clamp_probability(trace_product(
        u,
        rho_prev.matrix(),
        rho_next.matrix(),
    ))?)
}

/// Real part of `tr(U A U† B)`.
pub(crate) fn trace_product(u: &CMatrix, a: &CMatrix, b: &CMatrix) -> f64 {
    let moved = u * a * u.adjoint();
    // tr(XB) = Σ_ij X_ij B_ji
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..moved.nrows() {
        for j in 0..moved.ncols() {
            acc += moved[(i, j)] * b[(j, i)];
        }
    }
    acc.re
}
