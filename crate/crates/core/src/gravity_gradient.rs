//! Gravity-gradient torque in a J2-perturbed field.
//!
//! The production path is the linearized torque `(G_X·φ_s, G_Y·θ_s, G_Z·θ_s)`
//! whose coefficients scale the platform inertia differences by the
//! gravity-gradient strength `g_mu`. [`brute_force_gg_torque`] sums
//! `r × g(R + r)·dm` over a discrete mass distribution and serves as the
//! independent check on that linearization.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::frames::{body_from_stability, inertial_from_stability, EulerAngles};
use crate::orbit::{EarthModel, InertialState};

const KM: f64 = 1.0e3;

/// Gravity vector including the J2 zonal term (km/s² for km inputs).
///
/// `g = −(μ/R³)·[1 − 1.5·J2·(R_e/R)²·(5·z²/R² − 1)]·R` with `z` the
/// inertial Z component of `position`.
pub fn gravity_vector_j2(position: &Vector3<f64>, earth: &EarthModel) -> Result<Vector3<f64>> {
    let r2 = position.norm_squared();
    if !(r2 > 0.0) {
        return Err(Error::Domain("gravity vector at zero radius".into()));
    }
    let r = r2.sqrt();
    let ratio = earth.equatorial_radius / r;
    let bracket = 1.0 - 1.5 * earth.j2 * ratio * ratio * (5.0 * position.z * position.z / r2 - 1.0);
    Ok(position * (-earth.mu / (r2 * r) * bracket))
}

/// Gravity-gradient strength g_μ (1/s²) at radius `radius` and inertial
/// height `z` above the equatorial plane.
///
/// All three terms are length-free once `radius`, `z` and the earth model
/// share one length unit, so the result can be used directly with SI
/// inertias.
pub fn gmu_coefficient(radius: f64, z: f64, earth: &EarthModel) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!("g_mu requires R > 0, got {radius}")));
    }
    let mu = earth.mu;
    let re2 = earth.equatorial_radius * earth.equatorial_radius;
    let r3 = radius.powi(3);
    let r5 = r3 * radius * radius;
    let r7 = r5 * radius * radius;
    let g_mu = 3.0 * mu / r3 + 52.5 * mu / r7 * earth.j2 * re2 * z * z - 7.5 * mu / r5 * earth.j2 * re2;
    if !(g_mu > 0.0) {
        return Err(Error::Domain(format!("non-positive gravity-gradient strength {g_mu}")));
    }
    Ok(g_mu)
}

/// Platform inertia entries entering the gravity-gradient torque (kg·m²).
///
/// `i_yz` is the product of inertia Σ m·y·z; the tensor carries −i_yz off
/// the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatformInertia {
    pub i_x: f64,
    pub i_y: f64,
    pub i_z: f64,
    pub i_yz: f64,
}

impl PlatformInertia {
    pub fn new(i_x: f64, i_y: f64, i_z: f64, i_yz: f64) -> Self {
        Self { i_x, i_y, i_z, i_yz }
    }

    pub fn tensor(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.i_x, 0.0, 0.0, //
            0.0, self.i_y, -self.i_yz, //
            0.0, -self.i_yz, self.i_z,
        )
    }
}

/// Linearized gravity-gradient coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GgCoefficients {
    /// Roll torque per radian of φ_s (N·m/rad).
    pub g_x: f64,
    /// Pitch torque per radian of θ_s (N·m/rad).
    pub g_y: f64,
    /// Yaw torque per radian of θ_s (N·m/rad).
    pub g_z: f64,
    /// Gravity-gradient strength (1/s²).
    pub g_mu: f64,
}

impl GgCoefficients {
    pub fn zero() -> Self {
        Self::default()
    }
}

pub fn gg_coefficients(g_mu: f64, inertia: &PlatformInertia) -> GgCoefficients {
    GgCoefficients {
        g_x: g_mu * (inertia.i_z - inertia.i_y),
        g_y: g_mu * (inertia.i_z - inertia.i_x),
        g_z: g_mu * inertia.i_yz,
        g_mu,
    }
}

/// Small-angle torque (N·m) about body X, Y, Z.
pub fn linearized_gg_moment(coeffs: &GgCoefficients, phi_s: f64, theta_s: f64) -> Vector3<f64> {
    Vector3::new(coeffs.g_x * phi_s, coeffs.g_y * theta_s, coeffs.g_z * theta_s)
}

/// Point mass of a discretized body, positioned in body axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassElement {
    /// m
    pub r: Vector3<f64>,
    /// kg
    pub dm: f64,
}

impl MassElement {
    pub fn new(r: Vector3<f64>, dm: f64) -> Self {
        Self { r, dm }
    }
}

/// Shifts the element set so its first moment vanishes.
pub fn recenter(elements: &mut [MassElement]) {
    let mass: f64 = elements.iter().map(|e| e.dm).sum();
    if mass <= 0.0 {
        return;
    }
    let moment: Vector3<f64> = elements.iter().map(|e| e.r * e.dm).sum();
    let cg = moment / mass;
    for e in elements.iter_mut() {
        e.r -= cg;
    }
}

/// Inertia tensor about the origin (kg·m²).
pub fn inertia_tensor(elements: &[MassElement]) -> Matrix3<f64> {
    elements.iter().fold(Matrix3::zeros(), |acc, e| {
        acc + (Matrix3::identity() * e.r.norm_squared() - e.r * e.r.transpose()) * e.dm
    })
}

/// Reads the four inertia symbols off a tensor.
pub fn platform_inertia(tensor: &Matrix3<f64>) -> PlatformInertia {
    PlatformInertia::new(tensor[(0, 0)], tensor[(1, 1)], tensor[(2, 2)], -tensor[(1, 2)])
}

/// Builds a point-mass body realizing `inertia`: a pair of equal masses
/// on each body axis at ±`arm`, plus a pair at ±(0, arm, ±arm) when a
/// product of inertia is requested.
pub fn box_dumbbell(inertia: &PlatformInertia, arm: f64) -> Result<Vec<MassElement>> {
    if !(arm > 0.0) {
        return Err(Error::Domain(format!("arm length must be > 0, got {arm}")));
    }
    let PlatformInertia { i_x, i_y, i_z, i_yz } = *inertia;
    let product = i_yz.abs();
    // second moments Σ m·a² per axis
    let s_x = 0.5 * (i_y + i_z - i_x);
    let s_y = 0.5 * (i_x + i_z - i_y) - product;
    let s_z = 0.5 * (i_x + i_y - i_z) - product;
    if s_x < 0.0 || s_y < 0.0 || s_z < 0.0 {
        return Err(Error::InvalidSatellite(format!(
            "inertia set {inertia:?} cannot be realized by point masses"
        )));
    }

    let mut elements = Vec::with_capacity(8);
    let axes = [Vector3::x(), Vector3::y(), Vector3::z()];
    for (axis, second_moment) in axes.iter().zip([s_x, s_y, s_z]) {
        if second_moment > 0.0 {
            let dm = second_moment / (2.0 * arm * arm);
            elements.push(MassElement::new(axis * arm, dm));
            elements.push(MassElement::new(-axis * arm, dm));
        }
    }
    if product > 0.0 {
        let dm = product / (2.0 * arm * arm);
        let offset = Vector3::new(0.0, arm, arm * i_yz.signum());
        elements.push(MassElement::new(offset, dm));
        elements.push(MassElement::new(-offset, dm));
    }
    Ok(elements)
}

/// Exact gravity-gradient torque (N·m, body axes) on a discretized body.
///
/// Each element is placed at `R + r` in inertial space using the
/// stability-to-body rotation of `attitude`, and contributes
/// `r × g(R + r)·dm`. The field difference `g(R + r) − g(R)` is evaluated
/// in a form free of catastrophic cancellation, so the result stays
/// accurate although `|r|/|R|` is of order 1e−7.
pub fn brute_force_gg_torque(
    elements: &[MassElement],
    state: &InertialState,
    attitude: &EulerAngles,
    earth: &EarthModel,
) -> Result<Vector3<f64>> {
    let mut body = elements.to_vec();
    if body.iter().any(|e| !(e.dm > 0.0)) {
        return Err(Error::Domain("mass elements must have dm > 0".into()));
    }
    recenter(&mut body);

    let base = state.position * KM;
    let mu = earth.mu * KM.powi(3);
    let k = 1.5 * earth.j2 * (earth.equatorial_radius * KM).powi(2);

    let inertial_from_body = inertial_from_stability(state)? * body_from_stability(attitude).transpose();
    let mut torque = Vector3::zeros();
    for element in &body {
        let offset = inertial_from_body * element.r;
        if !((base + offset).norm() > 0.0) || offset.norm() >= base.norm() {
            return Err(Error::Domain("mass element at or below the Earth's centre".into()));
        }
        let dg = gravity_difference(&base, &offset, mu, k);
        torque += offset.cross(&dg) * element.dm;
    }
    Ok(inertial_from_body.transpose() * torque)
}

/// g(base + offset) − g(base) for g(x) = −μ·x·f(x),
/// f = s³ + k·s⁵ − 5k·z²·s⁷, s = 1/|x|.
fn gravity_difference(base: &Vector3<f64>, offset: &Vector3<f64>, mu: f64, k: f64) -> Vector3<f64> {
    let r0 = base.norm();
    let r1 = (base + offset).norm();
    // r1 − r0 without subtracting nearly equal magnitudes
    let dr = (2.0 * base.dot(offset) + offset.norm_squared()) / (r1 + r0);
    let s0 = 1.0 / r0;
    let s1 = 1.0 / r1;
    let ds = -dr * s0 * s1;

    let z0 = base.z;
    let z1 = base.z + offset.z;
    let dz2 = offset.z * (2.0 * z0 + offset.z);

    let f1 = s1.powi(3) + k * s1.powi(5) - 5.0 * k * z1 * z1 * s1.powi(7);
    let df = power_difference(s1, s0, ds, 3) + k * power_difference(s1, s0, ds, 5)
        - 5.0 * k * (dz2 * s1.powi(7) + z0 * z0 * power_difference(s1, s0, ds, 7));

    -(offset * f1 + base * df) * mu
}

/// a^n − b^n given d = a − b.
fn power_difference(a: f64, b: f64, d: f64, n: i32) -> f64 {
    let sum: f64 = (0..n).map(|j| a.powi(j) * b.powi(n - 1 - j)).sum();
    d * sum
}
