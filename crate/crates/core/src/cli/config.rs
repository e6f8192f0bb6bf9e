//! Scenario files: flat TOML key/value pairs, angles in degrees.

use std::path::Path;

use serde::Deserialize;

use crate::attitude::{ReferenceMatrices, SatelliteParams};
use crate::error::{Error, Result};
use crate::orbit::{EarthModel, KeplerianElements, EARTH_EQUATORIAL_RADIUS_KM, EARTH_J2, EARTH_MU_KM3_S2};
use crate::sim::scenario::{
    InputSignal, Scenario, Span, VehicleModel, DEFAULT_ATTITUDE_DT, DEFAULT_ORBIT_DT, REFERENCE_SEMI_MAJOR_AXIS_KM,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// A and B from physical parameters.
    Builder,
    /// Static A and B entries given numerically.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub a_km: f64,
    pub e: f64,
    pub i_deg: f64,
    pub raan_deg: f64,
    pub argp_deg: f64,
    pub true_anomaly_deg: f64,

    pub mu: f64,
    pub re_km: f64,
    pub j2: f64,

    /// Step for attitude-bearing commands (s).
    pub dt: f64,
    /// Step for the orbit command (s).
    pub orbit_dt: f64,
    pub orbits: f64,
    /// Overrides `orbits` when present.
    pub duration_s: Option<f64>,

    pub mode: Mode,
    pub j2_torque: bool,
    pub gravity_gradient: bool,

    pub impulse_start_s: f64,
    pub impulse_width_s: f64,
    pub impulse_volts: f64,

    pub i_x: Option<f64>,
    pub i_y: Option<f64>,
    pub i_z: Option<f64>,
    pub i_yz: Option<f64>,
    pub i_s: Option<f64>,
    pub i_t: Option<f64>,
    pub rotor_rate: Option<f64>,
    pub motor_gain: Option<f64>,
    pub back_emf: Option<f64>,
    pub armature_resistance: Option<f64>,
    pub damping: Option<f64>,

    pub a13: Option<f64>,
    pub a21: Option<f64>,
    pub a22: Option<f64>,
    pub a23: Option<f64>,
    pub a31: Option<f64>,
    pub a32: Option<f64>,
    pub a33: Option<f64>,
    pub b21: Option<f64>,
    pub b31: Option<f64>,

    pub e_values: Vec<f64>,
    pub i_deg_values: Vec<f64>,
    /// Orbit time at which `eig` assembles A (s).
    pub eig_time_s: f64,
    /// Orbits of look-back for the divergence verdict.
    pub lookback_orbits: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a_km: REFERENCE_SEMI_MAJOR_AXIS_KM,
            e: 0.0,
            i_deg: 30.0,
            raan_deg: 0.0,
            argp_deg: 0.0,
            true_anomaly_deg: 0.0,
            mu: EARTH_MU_KM3_S2,
            re_km: EARTH_EQUATORIAL_RADIUS_KM,
            j2: EARTH_J2,
            dt: DEFAULT_ATTITUDE_DT,
            orbit_dt: DEFAULT_ORBIT_DT,
            orbits: 1.0,
            duration_s: None,
            mode: Mode::Direct,
            j2_torque: true,
            gravity_gradient: true,
            impulse_start_s: 10.0,
            impulse_width_s: 1.0,
            impulse_volts: 1.0,
            i_x: None,
            i_y: None,
            i_z: None,
            i_yz: None,
            i_s: None,
            i_t: None,
            rotor_rate: None,
            motor_gain: None,
            back_emf: None,
            armature_resistance: None,
            damping: None,
            a13: None,
            a21: None,
            a22: None,
            a23: None,
            a31: None,
            a32: None,
            a33: None,
            b21: None,
            b31: None,
            e_values: vec![0.0, 0.2],
            i_deg_values: vec![0.0, 30.0, 60.0],
            eig_time_s: 0.0,
            lookback_orbits: 4,
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn earth(&self) -> Result<EarthModel> {
        EarthModel::new(self.mu, self.re_km, self.j2)
    }

    pub fn elements(&self) -> KeplerianElements {
        KeplerianElements::from_degrees(
            self.a_km,
            self.e,
            self.i_deg,
            self.raan_deg,
            self.argp_deg,
            self.true_anomaly_deg,
        )
    }

    /// Reference entries with any overrides applied.
    pub fn reference_matrices(&self) -> ReferenceMatrices {
        let d = ReferenceMatrices::default();
        ReferenceMatrices {
            a13: self.a13.unwrap_or(d.a13),
            a21: self.a21.unwrap_or(d.a21),
            a22: self.a22.unwrap_or(d.a22),
            a23: self.a23.unwrap_or(d.a23),
            a31: self.a31.unwrap_or(d.a31),
            a32: self.a32.unwrap_or(d.a32),
            a33: self.a33.unwrap_or(d.a33),
            b21: self.b21.unwrap_or(d.b21),
            b31: self.b31.unwrap_or(d.b31),
        }
    }

    /// `base` with any satellite overrides applied.
    pub fn satellite(&self, base: SatelliteParams) -> SatelliteParams {
        SatelliteParams {
            i_x: self.i_x.unwrap_or(base.i_x),
            i_y: self.i_y.unwrap_or(base.i_y),
            i_z: self.i_z.unwrap_or(base.i_z),
            i_yz: self.i_yz.unwrap_or(base.i_yz),
            i_s: self.i_s.unwrap_or(base.i_s),
            i_t: self.i_t.unwrap_or(base.i_t),
            rotor_rate: self.rotor_rate.unwrap_or(base.rotor_rate),
            motor_gain: self.motor_gain.unwrap_or(base.motor_gain),
            back_emf: self.back_emf.unwrap_or(base.back_emf),
            armature_resistance: self.armature_resistance.unwrap_or(base.armature_resistance),
            damping: self.damping.unwrap_or(base.damping),
        }
    }

    pub fn vehicle(&self) -> VehicleModel {
        match self.mode {
            Mode::Builder => VehicleModel::Builder(self.satellite(SatelliteParams::synthetic())),
            Mode::Direct => VehicleModel::Direct {
                matrices: self.reference_matrices(),
                gg_params: self.satellite(SatelliteParams::reference_consistent()),
            },
        }
    }

    pub fn span(&self) -> Span {
        match self.duration_s {
            Some(s) => Span::Seconds(s),
            None => Span::Orbits(self.orbits),
        }
    }

    /// Scenario integrated with step `dt`.
    pub fn scenario(&self, dt: f64) -> Result<Scenario> {
        let input = if self.impulse_width_s > 0.0 && self.impulse_volts != 0.0 {
            InputSignal::impulse(self.impulse_start_s, self.impulse_width_s, self.impulse_volts)
        } else {
            InputSignal::none()
        };
        let scenario = Scenario {
            earth: self.earth()?,
            elements: self.elements(),
            vehicle: self.vehicle(),
            span: self.span(),
            dt,
            input,
            initial_attitude: Default::default(),
            j2_enabled: self.j2_torque,
            gravity_gradient_enabled: self.gravity_gradient,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}
