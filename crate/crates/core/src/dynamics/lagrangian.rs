//! Continuum limit of the single-step entropy.
//!
//! For a pure state `ψ(t)` and a unitary `U ≈ 1 + iA` with `A(t_0) = 0`,
//!
//! ```text
//! -ln |⟨ψ(t_0+Δt)| e^{iȦΔt} |ψ(t_0)⟩|² = L Δt² + O(Δt³)
//! L = ⟨Ȧ²⟩ - ⟨Ȧ⟩²
//!     - i(⟨ψ̇|Ȧ|ψ⟩ - ⟨ψ|Ȧ|ψ̇⟩ + 2⟨Ȧ⟩⟨ψ|ψ̇⟩)
//!     + ⟨ψ̇|ψ̇⟩ - |⟨ψ|ψ̇⟩|²
//! ```
//!
//! The first line is the dispersion of `Ȧ` in `ψ`. The last is the
//! Fubini-Study metric term, the only combination of `⟨ψ̇|ψ̇⟩` and `⟨ψ|ψ̇⟩`
//! unchanged by the phase change `ψ → e^{iθ(t)}ψ`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{c, exp_i_hermitian, hermitian_residual, sandwich, CMatrix, CVector};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TANGENT_TOL: f64 = 1e-10;
pub const IMAGINARY_TOL: f64 = 1e-8;
pub const DISPERSION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianInputs {
    psi: CVector,
    psi_dot: CVector,
    a_dot: CMatrix,
}

impl LagrangianInputs {
    /// Requires `‖ψ‖ = 1`, `Re⟨ψ|ψ̇⟩ = 0` and Hermitian `Ȧ`.
    pub fn new(psi: CVector, psi_dot: CVector, a_dot: CMatrix) -> Result<Self> {
        let dim = psi.len();
        if psi_dot.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: psi_dot.len(),
            });
        }
        if a_dot.nrows() != dim || a_dot.ncols() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: a_dot.nrows(),
            });
        }
        let norm = psi.norm();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(Error::InvalidLagrangian(format!("‖ψ‖ = {norm}")));
        }
        let herm = hermitian_residual(&a_dot);
        if !(herm <= HERMITIAN_TOL) {
            return Err(Error::InvalidLagrangian(format!(
                "Ȧ not Hermitian (residual {herm:e})"
            )));
        }
        let tangent = psi.dotc(&psi_dot).re;
        if !(tangent.abs() <= TANGENT_TOL) {
            return Err(Error::InvalidLagrangian(format!("Re⟨ψ|ψ̇⟩ = {tangent:e}")));
        }
        Ok(LagrangianInputs {
            psi,
            psi_dot,
            a_dot,
        })
    }

    pub fn psi(&self) -> &CVector {
        &self.psi
    }

    pub fn psi_dot(&self) -> &CVector {
        &self.psi_dot
    }

    pub fn a_dot(&self) -> &CMatrix {
        &self.a_dot
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangianTerms {
    /// `⟨Ȧ²⟩ - ⟨Ȧ⟩²`.
    pub dispersion: f64,
    pub coupling: f64,
    /// `⟨ψ̇|ψ̇⟩ - |⟨ψ|ψ̇⟩|²`.
    pub kinetic: f64,
}

impl LagrangianTerms {
    pub fn total(&self) -> f64 {
        self.dispersion + self.coupling + self.kinetic
    }
}

pub fn lagrangian_terms(inp: &LagrangianInputs) -> LagrangianTerms {
    let (psi, dpsi, a) = (&inp.psi, &inp.psi_dot, &inp.a_dot);
    let mean = sandwich(psi, a, psi);
    let a_psi = a * psi;
    let second = a_psi.dotc(&a_psi);
    let dispersion = second - mean * mean;
    let overlap = psi.dotc(dpsi);
    let coupling = Complex64::new(0.0, -1.0)
        * (sandwich(dpsi, a, psi) - sandwich(psi, a, dpsi) + c(2.0) * mean * overlap);
    let kinetic = dpsi.dotc(dpsi).re - overlap.norm_sqr();
    let imaginary = dispersion.im.abs() + coupling.im.abs();
    assert!(
        imaginary < IMAGINARY_TOL,
        "Lagrangian has imaginary part {imaginary:e}"
    );
    assert!(
        dispersion.re >= -DISPERSION_TOL,
        "negative dispersion {}",
        dispersion.re
    );
    LagrangianTerms {
        dispersion: dispersion.re,
        coupling: coupling.re,
        kinetic,
    }
}

/// `L` for the given state, velocity and generator rate.
///
/// ```
/// use nalgebra::{DMatrix, DVector};
/// use num_complex::Complex64;
/// use permqm::dynamics::{lagrangian, LagrangianInputs};
///
/// let one = Complex64::new(1.0, 0.0);
/// let zero = Complex64::new(0.0, 0.0);
/// let psi = DVector::from_vec(vec![one, zero]);
/// let a = DMatrix::from_diagonal(&DVector::from_vec(vec![one, -one]));
/// let rest = LagrangianInputs::new(psi, DVector::zeros(2), a).unwrap();
/// assert_eq!(lagrangian(&rest).unwrap(), 0.0);
/// ```
pub fn lagrangian(inp: &LagrangianInputs) -> Result<f64> {
    Ok(lagrangian_terms(inp).total())
}

/// Hermitian matrix with uniform random entries, scaled to unit spectral norm.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let x = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let h = (&x + x.adjoint()) * c(0.5);
    let norm = h
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |m, l| m.max(l.abs()));
    h * c(1.0 / norm)
}

/// `ψ(t) = exp(-i(K_1 t + K_2 t²)) ψ_0` observed through `U(Δt) = exp(iȦΔt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothFamily {
    pub k1: CMatrix,
    pub k2: CMatrix,
    pub a_dot: CMatrix,
    pub psi0: CVector,
}

impl SmoothFamily {
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let k1 = random_hermitian(dim, rng);
        let k2 = random_hermitian(dim, rng);
        let a_dot = random_hermitian(dim, rng);
        let psi0 = CVector::from_fn(dim, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
        .normalize();
        SmoothFamily {
            k1,
            k2,
            a_dot,
            psi0,
        }
    }

    pub fn dim(&self) -> usize {
        self.psi0.len()
    }

    pub fn state(&self, t: f64) -> CVector {
        let h = &self.k1 * c(t) + &self.k2 * c(t * t);
        exp_i_hermitian(&h, -1.0) * &self.psi0
    }

    /// `ψ(0)`, `ψ̇(0) = -iK_1ψ_0` and `Ȧ`.
    pub fn inputs(&self) -> Result<LagrangianInputs> {
        let psi_dot = (&self.k1 * &self.psi0) * Complex64::new(0.0, -1.0);
        LagrangianInputs::new(self.psi0.clone(), psi_dot, self.a_dot.clone())
    }

    /// `-ln P(Δt)`.
    pub fn step_entropy(&self, dt: f64) -> f64 {
        let evolved = exp_i_hermitian(&self.a_dot, dt) * &self.psi0;
        -self.state(dt).dotc(&evolved).norm_sqr().ln()
    }

    /// `|-ln P(Δt) - L Δt²|` for each `Δt`.
    pub fn residuals(&self, dts: &[f64]) -> Result<Vec<f64>> {
        let l = lagrangian(&self.inputs()?)?;
        Ok(dts
            .iter()
            .map(|&dt| (self.step_entropy(dt) - l * dt * dt).abs())
            .collect())
    }
}

/// `Δt = 0.1 · 2^-k`, `k = 0..=6`: successive halvings spanning `[1e-3, 1e-1]`.
pub fn halving_steps() -> Vec<f64> {
    (0..=6).map(|k| 0.1 / f64::powi(2.0, k)).collect()
}
