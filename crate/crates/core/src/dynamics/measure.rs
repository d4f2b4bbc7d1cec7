//! Measures `μ_ρ(S) = tr(ρ P_S)` and expectation values `tr(ρ A)`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_residual, idempotent_residual, CMatrix};
use crate::repstate::DensityMatrix;

use super::step::{check_dim, check_unitary, clamp_probability};

pub const PROJECTOR_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const IMAGINARY_TOL: f64 = 1e-10;

/// Probability `tr(ρP)` of the subspace with orthogonal projector `P`.
pub fn observe(rho: &DensityMatrix, projector: &CMatrix) -> Result<f64> {
    check_dim(rho.dim(), projector.nrows())?;
    check_dim(rho.dim(), projector.ncols())?;
    let residual = idempotent_residual(projector).max(hermitian_residual(projector));
    if !(residual <= PROJECTOR_TOL) {
        return Err(Error::MatrixProperty {
            property: "an orthogonal projector",
            residual,
        });
    }
    clamp_probability((rho.matrix() * projector).trace().re)
}

pub fn expectation(rho: &DensityMatrix, a: &CMatrix) -> Result<f64> {
    check_dim(rho.dim(), a.nrows())?;
    check_dim(rho.dim(), a.ncols())?;
    let residual = hermitian_residual(a);
    if !(residual <= HERMITIAN_TOL) {
        return Err(Error::MatrixProperty {
            property: "Hermitian",
            residual,
        });
    }
    let value = (rho.matrix() * a).trace();
    let scale = 1.0 + value.re.abs();
    assert!(
        value.im.abs() <= IMAGINARY_TOL * scale,
        "tr(ρA) has imaginary part {}",
        value.im
    );
    Ok(value.re)
}

/// `U ρ U†`.
pub fn evolve_density(u: &CMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_unitary(u)?;
    check_dim(u.nrows(), rho.dim())?;
    let moved = u * rho.matrix() * u.adjoint();
    let half = num_complex::Complex64::new(0.5, 0.0);
    Ok(DensityMatrix::from_unchecked(
        (&moved + moved.adjoint()) * half,
    ))
}
