//! Two-body orbital mechanics: Keplerian elements, the epoch state built
//! from them, the attractive point-mass acceleration, and the orbit-derived
//! rates (transversal velocity, orbital angular rate and its drift) that
//! drive the attitude model.
//!
//! Lengths are kilometres and times seconds throughout this module.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Standard Earth gravitational parameter (km³/s²).
pub const EARTH_MU_KM3_S2: f64 = 398_600.441_8;
/// Earth equatorial radius (km).
pub const EARTH_EQUATORIAL_RADIUS_KM: f64 = 6_378.137;
/// Second zonal harmonic of the geopotential.
pub const EARTH_J2: f64 = 1.082_63e-3;

/// Gravitational constants of the central body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel {
    /// Gravitational parameter (km³/s²).
    pub mu: f64,
    /// Equatorial radius (km).
    pub equatorial_radius: f64,
    /// Second zonal harmonic (dimensionless).
    pub j2: f64,
}

impl Default for EarthModel {
    fn default() -> Self {
        Self {
            mu: EARTH_MU_KM3_S2,
            equatorial_radius: EARTH_EQUATORIAL_RADIUS_KM,
            j2: EARTH_J2,
        }
    }
}

impl EarthModel {
    pub fn new(mu: f64, equatorial_radius: f64, j2: f64) -> Result<Self> {
        let earth = Self {
            mu,
            equatorial_radius,
            j2,
        };
        earth.validate()?;
        Ok(earth)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::InvalidEarthModel(format!("mu must be > 0, got {}", self.mu)));
        }
        if !(self.equatorial_radius.is_finite() && self.equatorial_radius > 0.0) {
            return Err(Error::InvalidEarthModel(format!(
                "equatorial radius must be > 0, got {}",
                self.equatorial_radius
            )));
        }
        if !(0.0..0.01).contains(&self.j2) {
            return Err(Error::InvalidEarthModel(format!(
                "J2 must lie in [0, 0.01), got {}",
                self.j2
            )));
        }
        Ok(())
    }

    /// Same body with the zonal harmonic switched off.
    pub fn without_j2(self) -> Self {
        Self { j2: 0.0, ..self }
    }
}

/// Classical orbital elements, with the epoch fixed by the true anomaly
/// rather than a time of perigee passage. Angles are radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeplerianElements {
    /// Semimajor axis (km).
    pub semi_major_axis: f64,
    pub eccentricity: f64,
    pub inclination: f64,
    /// Right ascension of the ascending node.
    pub raan: f64,
    /// Argument of perigee.
    pub arg_perigee: f64,
    pub true_anomaly: f64,
}

impl KeplerianElements {
    /// Builds an element set from angles given in degrees.
    pub fn from_degrees(
        semi_major_axis: f64,
        eccentricity: f64,
        inclination_deg: f64,
        raan_deg: f64,
        arg_perigee_deg: f64,
        true_anomaly_deg: f64,
    ) -> Self {
        Self {
            semi_major_axis,
            eccentricity,
            inclination: inclination_deg.to_radians(),
            raan: raan_deg.to_radians(),
            arg_perigee: arg_perigee_deg.to_radians(),
            true_anomaly: true_anomaly_deg.to_radians(),
        }
    }

    pub fn validate(&self, earth: &EarthModel) -> Result<()> {
        let all_finite = [
            self.semi_major_axis,
            self.eccentricity,
            self.inclination,
            self.raan,
            self.arg_perigee,
            self.true_anomaly,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidElements("non-finite element".into()));
        }
        if self.semi_major_axis <= earth.equatorial_radius {
            return Err(Error::InvalidElements(format!(
                "semimajor axis {} km does not exceed the equatorial radius {} km",
                self.semi_major_axis, earth.equatorial_radius
            )));
        }
        if !(0.0..1.0).contains(&self.eccentricity) {
            return Err(Error::InvalidElements(format!(
                "eccentricity must lie in [0, 1), got {}",
                self.eccentricity
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.inclination) {
            return Err(Error::InvalidElements(format!(
                "inclination must lie in [0, pi], got {}",
                self.inclination
            )));
        }
        Ok(())
    }

    /// Semilatus rectum a(1 − e²).
    pub fn semi_latus_rectum(&self) -> f64 {
        self.semi_major_axis * (1.0 - self.eccentricity * self.eccentricity)
    }

    pub fn perigee_radius(&self) -> f64 {
        self.semi_major_axis * (1.0 - self.eccentricity)
    }

    pub fn apogee_radius(&self) -> f64 {
        self.semi_major_axis * (1.0 + self.eccentricity)
    }

    /// Keplerian period 2π√(a³/μ).
    pub fn period(&self, earth: &EarthModel) -> f64 {
        std::f64::consts::TAU * (self.semi_major_axis.powi(3) / earth.mu).sqrt()
    }

    /// Mean motion √(μ/a³).
    pub fn mean_motion(&self, earth: &EarthModel) -> f64 {
        (earth.mu / self.semi_major_axis.powi(3)).sqrt()
    }
}

/// Position and velocity in the geocentric non-rotating equatorial frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertialState {
    /// km
    pub position: Vector3<f64>,
    /// km/s
    pub velocity: Vector3<f64>,
}

impl InertialState {
    pub fn new(position: Vector3<f64>, velocity: Vector3<f64>) -> Self {
        Self { position, velocity }
    }

    pub fn radius(&self) -> f64 {
        self.position.norm()
    }

    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }

    /// Specific angular momentum vector R × V (km²/s).
    pub fn angular_momentum(&self) -> Vector3<f64> {
        self.position.cross(&self.velocity)
    }

    /// Specific orbital energy V²/2 − μ/R (km²/s²).
    pub fn specific_energy(&self, mu: f64) -> f64 {
        0.5 * self.velocity.norm_squared() - mu / self.radius()
    }
}

/// Rotation from perifocal to inertial axes: Ω about Z, i about the node
/// line, then ω about the orbit normal.
pub fn perifocal_to_inertial(elements: &KeplerianElements) -> Matrix3<f64> {
    let (sw, cw) = elements.arg_perigee.sin_cos();
    let (so, co) = elements.raan.sin_cos();
    let (si, ci) = elements.inclination.sin_cos();
    Matrix3::new(
        cw * co - sw * ci * so,
        -sw * co - cw * ci * so,
        so * si,
        cw * so + sw * ci * co,
        -sw * so + cw * ci * co,
        -si * co,
        sw * si,
        cw * si,
        ci,
    )
}

/// Epoch state on the conic described by `elements`.
///
/// The velocity is assembled from its radial and transversal components,
/// √(μ/p)·e·sin θ̃ and √(μ/p)·(1 + e·cos θ̃), rotated by the true anomaly
/// into perifocal axes.
pub fn state_from_elements(elements: &KeplerianElements, earth: &EarthModel) -> Result<InertialState> {
    elements.validate(earth)?;
    let e = elements.eccentricity;
    let p = elements.semi_latus_rectum();
    let (s, c) = elements.true_anomaly.sin_cos();
    let radius = p / (1.0 + e * c);
    let rotation = perifocal_to_inertial(elements);

    let position = rotation * Vector3::new(radius * c, radius * s, 0.0);

    let scale = (earth.mu / p).sqrt();
    let radial = scale * e * s;
    let transversal = scale * (1.0 + e * c);
    // local (radial, transversal) -> perifocal
    let perifocal_velocity = Vector3::new(c * radial - s * transversal, s * radial + c * transversal, 0.0);
    let velocity = rotation * perifocal_velocity;

    Ok(InertialState { position, velocity })
}

/// Point-mass gravitational acceleration −(μ/R³)·R (km/s²).
pub fn two_body_acceleration(position: &Vector3<f64>, earth: &EarthModel) -> Result<Vector3<f64>> {
    let r2 = position.norm_squared();
    if !(r2 > 0.0) {
        return Err(Error::Domain("two-body acceleration at zero radius".into()));
    }
    let r = r2.sqrt();
    Ok(position * (-earth.mu / (r2 * r)))
}

/// Component of velocity perpendicular to the radius vector (km/s),
/// from the speed and the flight-path relation
/// sin φ̃ = √(a²(1 − e²) / (R(2a − R))).
pub fn transversal_velocity(state: &InertialState, elements: &KeplerianElements) -> Result<f64> {
    let a = elements.semi_major_axis;
    let e = elements.eccentricity;
    let radius = state.radius();
    let denom = radius * (2.0 * a - radius);
    if !(denom > 0.0) {
        return Err(Error::NonElliptic {
            radius,
            two_a: 2.0 * a,
        });
    }
    let sin_path = (a * a * (1.0 - e * e) / denom).sqrt();
    Ok(state.speed() * sin_path)
}

/// Orbital angular rate and its drift from the epoch value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitalRate {
    /// n = −V_θ/R (rad/s)
    pub n: f64,
    /// δn = n − n₀ (rad/s)
    pub delta_n: f64,
}

/// Orbital angular rate n = −V_θ/R at `state`, and δn relative to `n0`.
pub fn orbital_rate(state: &InertialState, elements: &KeplerianElements, n0: f64) -> Result<OrbitalRate> {
    let v_theta = transversal_velocity(state, elements)?;
    let n = -v_theta / state.radius();
    // a circular orbit turns at a constant rate, so δn is zero by
    // definition rather than the roundoff of the propagated radius
    let delta_n = if elements.eccentricity == 0.0 { 0.0 } else { n - n0 };
    Ok(OrbitalRate { n, delta_n })
}

/// Orbital angular rate n = −V_θ/R, the epoch reference for δn.
pub fn epoch_rate(state: &InertialState, elements: &KeplerianElements) -> Result<f64> {
    Ok(orbital_rate(state, elements, 0.0)?.n)
}
