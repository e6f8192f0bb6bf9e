//! Eigenvalues of the 6×6 system matrix.
//!
//! The spectrum comes from a real Schur decomposition; every root is then
//! checked against the characteristic polynomial, whose coefficients are
//! built independently by the Faddeev-LeVerrier recursion.

use nalgebra::Matrix6;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest accepted |p(λ)| relative to Σ|c_k|·ρ^k, ρ the spectral radius.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

const SCHUR_EPS: f64 = 1e-14;
const SCHUR_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenAnalysis {
    /// Eigenvalues sorted by real part, then imaginary part.
    pub values: Vec<Complex64>,
    /// Scaled characteristic-polynomial residual of each eigenvalue.
    pub residuals: Vec<f64>,
}

impl EigenAnalysis {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest real part; positive means an unstable mode.
    pub fn spectral_abscissa(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn eigen_analysis(a: &Matrix6<f64>) -> Result<EigenAnalysis> {
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let schur = a.try_schur(SCHUR_EPS, SCHUR_MAX_ITERATIONS).ok_or(Error::EigenNoConvergence)?;
    let mut values: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));

    let coefficients = characteristic_polynomial(a);
    let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let residuals: Vec<f64> = values
        .iter()
        .map(|z| polynomial_residual(&coefficients, *z, radius))
        .collect();
    let analysis = EigenAnalysis { values, residuals };
    if analysis.max_residual() > RESIDUAL_TOLERANCE {
        log::error!("eigenvalue residual {:e} exceeds tolerance", analysis.max_residual());
        return Err(Error::EigenNoConvergence);
    }
    Ok(analysis)
}

/// Coefficients c₀…c₆ of det(λI − A), lowest degree first, c₆ = 1.
pub fn characteristic_polynomial(a: &Matrix6<f64>) -> [f64; 7] {
    let mut c = [0.0; 7];
    c[6] = 1.0;
    let mut m = Matrix6::<f64>::zeros();
    for k in 1..=6 {
        m = a * m + Matrix6::identity() * c[7 - k];
        c[6 - k] = -(a * m).trace() / k as f64;
    }
    c
}

/// |p(z)| divided by Σ|c_k|·r^k with r = max(|z|, `radius`).
///
/// Scaling at the spectral radius keeps roots at or near zero, where the
/// low-order coefficients are pure roundoff, from reading as failures.
pub fn polynomial_residual(coefficients: &[f64], z: Complex64, radius: f64) -> f64 {
    let r = z.norm().max(radius);
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &c in coefficients.iter().rev() {
        value = value * z + c;
        scale = scale * r + c.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}
