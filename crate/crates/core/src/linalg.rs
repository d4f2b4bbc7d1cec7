//! Dense complex matrix helpers shared by the float-side checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermitian_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `max |U U† - 1|`.
pub fn unitary_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - CMatrix::identity(n, n)))
}

pub fn idempotent_residual(m: &CMatrix) -> f64 {
    max_abs(&(m * m - m))
}

pub fn from_real(m: &DMatrix<f64>) -> CMatrix {
    m.map(c)
}

/// `exp(i·t·H)` for Hermitian `H`, through its eigendecomposition.
pub fn exp_i_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let phases = eig
        .eigenvalues
        .map(|lambda| Complex64::from_polar(1.0, lambda * t));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// `⟨a|b⟩`, antilinear in the first slot.
pub fn braket(a: &CVector, b: &CVector) -> Complex64 {
    a.dotc(b)
}

/// `⟨a|M|b⟩`.
pub fn sandwich(a: &CVector, m: &CMatrix, b: &CVector) -> Complex64 {
    a.dotc(&(m * b))
}
