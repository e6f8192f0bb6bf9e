use crate::attitude::{
    build_state_space, direct_state_space, AttitudeState, ReferenceMatrices, SatelliteParams, StateSpace,
};
use crate::error::{Error, Result};
use crate::gravity_gradient::GgCoefficients;
use crate::orbit::{EarthModel, KeplerianElements};

/// Semimajor axis of the reference orbit (km): 1700 km above the equator
/// when circular.
pub const REFERENCE_SEMI_MAJOR_AXIS_KM: f64 = 8078.14;

/// Step for attitude-bearing runs (s).
pub const DEFAULT_ATTITUDE_DT: f64 = 0.1;
/// Step for orbit-only runs (s).
pub const DEFAULT_ORBIT_DT: f64 = 1.0;

/// How the static part of the state-space pair is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum VehicleModel {
    /// A and B computed from physical parameters.
    Builder(SatelliteParams),
    /// Static entries given numerically; the gravity-gradient entries are
    /// still evaluated from `gg_params` along the orbit.
    Direct {
        matrices: ReferenceMatrices,
        gg_params: SatelliteParams,
    },
}

impl Default for VehicleModel {
    fn default() -> Self {
        VehicleModel::Direct {
            matrices: ReferenceMatrices::default(),
            gg_params: SatelliteParams::reference_consistent(),
        }
    }
}

impl VehicleModel {
    /// Parameters supplying the gravity-gradient inertias.
    pub fn gg_params(&self) -> &SatelliteParams {
        match self {
            VehicleModel::Builder(params) => params,
            VehicleModel::Direct { gg_params, .. } => gg_params,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            VehicleModel::Builder(params) => {
                params.validate()?;
                if !params.is_prolate() {
                    log::warn!("spin axis is not the minimum-inertia axis; the vehicle is not prolate");
                }
                Ok(())
            }
            VehicleModel::Direct { matrices, gg_params } => {
                if matrices.entries().iter().any(|(_, v)| !v.is_finite()) {
                    return Err(Error::InvalidScenario("non-finite matrix entry".into()));
                }
                gg_params.validate()
            }
        }
    }

    pub fn assemble(&self, gg: &GgCoefficients, delta_n: f64) -> Result<StateSpace> {
        match self {
            VehicleModel::Builder(params) => build_state_space(params, gg, delta_n),
            VehicleModel::Direct { matrices, gg_params } => Ok(direct_state_space(matrices, gg_params, gg, delta_n)),
        }
    }

    pub fn is_direct(&self) -> bool {
        matches!(self, VehicleModel::Direct { .. })
    }
}

/// A constant despin-motor voltage held over `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputSegment {
    pub start: f64,
    pub end: f64,
    pub volts: f64,
}

/// Piecewise-constant δe(t); zero outside every segment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InputSignal {
    segments: Vec<InputSegment>,
}

impl InputSignal {
    pub fn none() -> Self {
        Self::default()
    }

    /// Rectangular pulse of `volts` starting at `start` lasting `width`.
    pub fn impulse(start: f64, width: f64, volts: f64) -> Self {
        Self {
            segments: vec![InputSegment {
                start,
                end: start + width,
                volts,
            }],
        }
    }

    /// One-volt, one-second pulse at t = 10 s.
    pub fn default_impulse() -> Self {
        Self::impulse(10.0, 1.0, 1.0)
    }

    pub fn from_segments(mut segments: Vec<InputSegment>) -> Result<Self> {
        segments.sort_by(|a, b| a.start.total_cmp(&b.start));
        let signal = Self { segments };
        signal.validate()?;
        Ok(signal)
    }

    pub fn segments(&self) -> &[InputSegment] {
        &self.segments
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.segments {
            if !(s.start.is_finite() && s.end.is_finite() && s.volts.is_finite()) || s.end < s.start {
                return Err(Error::InvalidScenario(format!("malformed input segment {s:?}")));
            }
        }
        for pair in self.segments.windows(2) {
            if pair[1].start < pair[0].end {
                return Err(Error::InvalidScenario("input segments overlap".into()));
            }
        }
        Ok(())
    }

    pub fn value_at(&self, t: f64) -> f64 {
        self.segments
            .iter()
            .find(|s| t >= s.start && t < s.end)
            .map_or(0.0, |s| s.volts)
    }
}

/// Run length, either absolute or in Keplerian periods of the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Span {
    Seconds(f64),
    Orbits(f64),
}

/// Full configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub earth: EarthModel,
    pub elements: KeplerianElements,
    pub vehicle: VehicleModel,
    pub span: Span,
    /// Integration step (s).
    pub dt: f64,
    pub input: InputSignal,
    pub initial_attitude: AttitudeState,
    /// Include the J2 terms of the gravity-gradient strength.
    pub j2_enabled: bool,
    /// Include gravity-gradient torque at all.
    pub gravity_gradient_enabled: bool,
}

impl Scenario {
    /// Reference orbit at a = 8078.14 km with the given eccentricity and
    /// inclination, perigee on the node line, epoch at perigee, direct
    /// reference matrices, default impulse, two orbits at 0.1 s.
    pub fn reference(eccentricity: f64, inclination_deg: f64) -> Self {
        Self {
            earth: EarthModel::default(),
            elements: KeplerianElements::from_degrees(
                REFERENCE_SEMI_MAJOR_AXIS_KM,
                eccentricity,
                inclination_deg,
                0.0,
                0.0,
                0.0,
            ),
            vehicle: VehicleModel::default(),
            span: Span::Orbits(2.0),
            dt: DEFAULT_ATTITUDE_DT,
            input: InputSignal::default_impulse(),
            initial_attitude: AttitudeState::default(),
            j2_enabled: true,
            gravity_gradient_enabled: true,
        }
    }

    pub fn with_span(mut self, span: Span) -> Self {
        self.span = span;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_input(mut self, input: InputSignal) -> Self {
        self.input = input;
        self
    }

    pub fn with_vehicle(mut self, vehicle: VehicleModel) -> Self {
        self.vehicle = vehicle;
        self
    }

    /// Keplerian period of the scenario orbit (s).
    pub fn orbital_period(&self) -> f64 {
        self.elements.period(&self.earth)
    }

    pub fn duration(&self) -> f64 {
        match self.span {
            Span::Seconds(s) => s,
            Span::Orbits(k) => k * self.orbital_period(),
        }
    }

    /// Number of integration steps; the trajectory holds one more sample.
    pub fn steps(&self) -> usize {
        (self.duration() / self.dt + 1e-9).floor() as usize
    }

    /// Earth model used for the gravity-gradient strength.
    pub fn torque_earth(&self) -> EarthModel {
        if self.j2_enabled {
            self.earth
        } else {
            self.earth.without_j2()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.earth.validate()?;
        self.elements.validate(&self.earth)?;
        self.vehicle.validate()?;
        self.input.validate()?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidScenario(format!("dt must be > 0, got {}", self.dt)));
        }
        let duration = self.duration();
        if !(duration.is_finite() && duration >= 0.0) {
            return Err(Error::InvalidScenario(format!("duration must be >= 0, got {duration}")));
        }
        Ok(())
    }
}
