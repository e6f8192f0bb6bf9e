//! Fixed-step classical Runge-Kutta integration of the orbit alone and of
//! the coupled orbit/attitude system.
//!
//! In the coupled run the orbit and the attitude share one RK4 step. The
//! time-varying state-space entries (δn, g_mu and the gravity-gradient
//! entries of A) are re-evaluated at every stage from the stage's orbit
//! state, so the attitude solution keeps fourth-order accuracy.

use nalgebra::{Matrix6, SVector, Vector3, Vector6};

use crate::attitude::{AttitudeState, ControlInput, StateSpace};
use crate::error::{Error, Result};
use crate::gravity_gradient::{gg_coefficients, gmu_coefficient, GgCoefficients};
use crate::orbit::{epoch_rate, orbital_rate, state_from_elements, transversal_velocity, two_body_acceleration, InertialState};
use crate::sim::scenario::{InputSignal, Scenario, Span};

type OrbitVector = SVector<f64, 6>;
type CoupledVector = SVector<f64, 12>;

/// One classical fourth-order step of ẏ = f(t, y).
pub fn rk4_step<const N: usize, F>(f: F, t: f64, y: &SVector<f64, N>, dt: f64) -> Result<SVector<f64, N>>
where
    F: Fn(f64, &SVector<f64, N>) -> Result<SVector<f64, N>>,
{
    let half = 0.5 * dt;
    let k1 = f(t, y)?;
    let k2 = f(t + half, &(y + k1 * half))?;
    let k3 = f(t + half, &(y + k2 * half))?;
    let k4 = f(t + dt, &(y + k3 * dt))?;
    Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0))
}

fn pack_orbit(state: &InertialState) -> OrbitVector {
    let mut y = OrbitVector::zeros();
    y.fixed_rows_mut::<3>(0).copy_from(&state.position);
    y.fixed_rows_mut::<3>(3).copy_from(&state.velocity);
    y
}

fn unpack_orbit<const N: usize>(y: &SVector<f64, N>) -> InertialState {
    InertialState::new(
        Vector3::new(y[0], y[1], y[2]),
        Vector3::new(y[3], y[4], y[5]),
    )
}

/// Orbit sample with the derived quantities consumed by the attitude model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub t: f64,
    pub state: InertialState,
    /// |R| (km)
    pub radius: f64,
    /// Transversal velocity (km/s).
    pub v_theta: f64,
    /// Orbital angular rate −V_θ/R (rad/s).
    pub n: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTrajectory {
    pub samples: Vec<OrbitSample>,
    pub dt: f64,
}

fn check_radius(t: f64, state: &InertialState, scenario: &Scenario) -> Result<()> {
    let radius = state.radius();
    if radius < scenario.earth.equatorial_radius {
        return Err(Error::Impact { t, radius });
    }
    Ok(())
}

fn orbit_sample(t: f64, state: InertialState, scenario: &Scenario) -> Result<OrbitSample> {
    let radius = state.radius();
    let v_theta = transversal_velocity(&state, &scenario.elements)?;
    Ok(OrbitSample {
        t,
        state,
        radius,
        v_theta,
        n: -v_theta / radius,
    })
}

/// Propagates the two-body orbit from the scenario's elements.
pub fn integrate_orbit(scenario: &Scenario) -> Result<OrbitTrajectory> {
    scenario.validate()?;
    let earth = scenario.earth;
    let steps = scenario.steps();
    let dt = scenario.dt;
    let rhs = |_t: f64, y: &OrbitVector| -> Result<OrbitVector> {
        let acc = two_body_acceleration(&Vector3::new(y[0], y[1], y[2]), &earth)?;
        Ok(OrbitVector::new(y[3], y[4], y[5], acc.x, acc.y, acc.z))
    };

    let mut y = pack_orbit(&state_from_elements(&scenario.elements, &earth)?);
    if scenario.duration() == 0.0 {
        return Ok(OrbitTrajectory { samples: Vec::new(), dt });
    }
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(orbit_sample(0.0, unpack_orbit(&y), scenario)?);
    for k in 0..steps {
        y = rk4_step(rhs, k as f64 * dt, &y, dt)?;
        let t = (k + 1) as f64 * dt;
        let state = unpack_orbit(&y);
        check_radius(t, &state, scenario)?;
        samples.push(orbit_sample(t, state, scenario)?);
    }
    Ok(OrbitTrajectory { samples, dt })
}

/// Everything recorded at one step of a coupled run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub orbit: InertialState,
    pub radius: f64,
    pub v_theta: f64,
    pub n: f64,
    pub delta_n: f64,
    /// Gravity-gradient strength (1/s²).
    pub g_mu: f64,
    pub attitude: AttitudeState,
    /// Motor voltage held over the step that starts at `t` (V).
    pub delta_e: f64,
}

impl Sample {
    /// Inertial height above the equatorial plane (km).
    pub fn r_z1(&self) -> f64 {
        self.orbit.position.z
    }
}

/// Uniformly sampled record of a coupled run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub dt: f64,
    /// Keplerian period of the orbit (s).
    pub orbital_period: f64,
    /// Epoch orbital rate n₀ (rad/s).
    pub n0: f64,
    /// Time of the first sample outside the small-angle regime.
    pub small_angle_exceeded_at: Option<f64>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn channel(&self, f: impl Fn(&Sample) -> f64) -> Vec<f64> {
        self.samples.iter().map(f).collect()
    }

    pub fn phi_s(&self) -> Vec<f64> {
        self.channel(|s| s.attitude.phi_s)
    }

    pub fn theta_s(&self) -> Vec<f64> {
        self.channel(|s| s.attitude.theta_s)
    }

    pub fn psi_s(&self) -> Vec<f64> {
        self.channel(|s| s.attitude.psi_s)
    }

    pub fn final_attitude(&self) -> AttitudeState {
        self.samples.last().map(|s| s.attitude).unwrap_or_default()
    }
}

/// Orbit-dependent quantities evaluated at one (stage) state.
struct Environment {
    delta_n: f64,
    v_theta: f64,
    n: f64,
    g_mu: f64,
    gg: GgCoefficients,
}

struct CoupledModel<'a> {
    scenario: &'a Scenario,
    n0: f64,
}

impl CoupledModel<'_> {
    fn environment(&self, state: &InertialState) -> Result<Environment> {
        let s = self.scenario;
        let rate = orbital_rate(state, &s.elements, self.n0)?;
        let g_mu = gmu_coefficient(state.radius(), state.position.z, &s.torque_earth())?;
        let gg = if s.gravity_gradient_enabled {
            gg_coefficients(g_mu, &s.vehicle.gg_params().platform_inertia())
        } else {
            GgCoefficients::zero()
        };
        Ok(Environment {
            delta_n: rate.delta_n,
            v_theta: -rate.n * state.radius(),
            n: rate.n,
            g_mu,
            gg,
        })
    }

    fn rhs(&self, y: &CoupledVector, delta_e: f64) -> Result<CoupledVector> {
        let orbit = unpack_orbit(y);
        let acc = two_body_acceleration(&orbit.position, &self.scenario.earth)?;
        let env = self.environment(&orbit)?;
        let ss = self.scenario.vehicle.assemble(&env.gg, env.delta_n)?;
        let x: Vector6<f64> = y.fixed_rows::<6>(6).into_owned();
        let x_dot = ss.a * x + ss.b * ControlInput::new(delta_e, env.delta_n).to_vector();

        let mut out = CoupledVector::zeros();
        out.fixed_rows_mut::<3>(0).copy_from(&orbit.velocity);
        out.fixed_rows_mut::<3>(3).copy_from(&acc);
        out.fixed_rows_mut::<6>(6).copy_from(&x_dot);
        Ok(out)
    }
}

/// Integrates the coupled orbit/attitude system over the scenario span.
pub fn run_coupled(scenario: &Scenario) -> Result<Trajectory> {
    scenario.validate()?;
    let initial = state_from_elements(&scenario.elements, &scenario.earth)?;
    let n0 = epoch_rate(&initial, &scenario.elements)?;
    let model = CoupledModel { scenario, n0 };
    let dt = scenario.dt;
    if scenario.duration() == 0.0 {
        return Ok(Trajectory {
            samples: Vec::new(),
            dt,
            orbital_period: scenario.orbital_period(),
            n0,
            small_angle_exceeded_at: None,
        });
    }

    let steps = scenario.steps();
    let mut y = CoupledVector::zeros();
    y.fixed_rows_mut::<6>(0).copy_from(&pack_orbit(&initial));
    y.fixed_rows_mut::<6>(6).copy_from(&scenario.initial_attitude.to_vector());

    let mut samples = Vec::with_capacity(steps + 1);
    let mut small_angle_exceeded_at = None;
    let mut record = |t: f64, y: &CoupledVector, delta_e: f64| -> Result<()> {
        let orbit = unpack_orbit(y);
        let env = model.environment(&orbit)?;
        let attitude = AttitudeState::from_vector(&y.fixed_rows::<6>(6).into_owned());
        if small_angle_exceeded_at.is_none() && attitude.exceeds_small_angle() {
            small_angle_exceeded_at = Some(t);
        }
        samples.push(Sample {
            t,
            orbit,
            radius: orbit.radius(),
            v_theta: env.v_theta,
            n: env.n,
            delta_n: env.delta_n,
            g_mu: env.g_mu,
            attitude,
            delta_e,
        });
        Ok(())
    };

    // the input is sampled at mid-step so pulse edges on step boundaries
    // are not sensitive to rounding of k·dt
    let input_at = |k: usize| scenario.input.value_at((k as f64 + 0.5) * dt);
    for k in 0..steps {
        let t = k as f64 * dt;
        let delta_e = input_at(k);
        record(t, &y, delta_e)?;
        y = rk4_step(|_, y| model.rhs(y, delta_e), t, &y, dt)?;
        check_radius(t + dt, &unpack_orbit(&y), scenario)?;
    }
    record(steps as f64 * dt, &y, input_at(steps))?;

    if let Some(t) = small_angle_exceeded_at {
        log::warn!("attitude left the small-angle regime at t = {t:.1} s");
    }
    Ok(Trajectory {
        samples,
        dt,
        orbital_period: scenario.orbital_period(),
        n0,
        small_angle_exceeded_at,
    })
}

/// State-space pair assembled at time `t` of the scenario orbit, which is
/// propagated there with steps no longer than the scenario step.
pub fn state_space_at(scenario: &Scenario, t: f64) -> Result<StateSpace> {
    scenario.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidScenario(format!("evaluation time must be >= 0, got {t}")));
    }
    let earth = scenario.earth;
    let initial = state_from_elements(&scenario.elements, &earth)?;
    let model = CoupledModel {
        scenario,
        n0: epoch_rate(&initial, &scenario.elements)?,
    };
    let steps = (t / scenario.dt).ceil() as usize;
    let mut y = pack_orbit(&initial);
    if steps > 0 {
        let h = t / steps as f64;
        let rhs = |_t: f64, y: &OrbitVector| -> Result<OrbitVector> {
            let acc = two_body_acceleration(&Vector3::new(y[0], y[1], y[2]), &earth)?;
            Ok(OrbitVector::new(y[3], y[4], y[5], acc.x, acc.y, acc.z))
        };
        for k in 0..steps {
            y = rk4_step(rhs, k as f64 * h, &y, h)?;
            check_radius((k + 1) as f64 * h, &unpack_orbit(&y), scenario)?;
        }
    }
    let env = model.environment(&unpack_orbit(&y))?;
    scenario.vehicle.assemble(&env.gg, env.delta_n)
}

/// One-orbit transition matrix of the unforced attitude dynamics.
///
/// A(t) repeats every orbit, so the eigenvalues of this matrix (the
/// Floquet multipliers) decide growth over many orbits: a modulus above
/// one grows by that factor per orbit. The δn forcing is removed by
/// subtracting the response from rest.
pub fn monodromy(scenario: &Scenario) -> Result<Matrix6<f64>> {
    let base = Scenario {
        span: Span::Orbits(1.0),
        input: InputSignal::none(),
        initial_attitude: AttitudeState::default(),
        ..scenario.clone()
    };
    let forced = run_coupled(&base)?.final_attitude().to_vector();
    let mut m = Matrix6::zeros();
    for k in 0..6 {
        let mut start = Vector6::zeros();
        start[k] = 1.0;
        let run = Scenario {
            initial_attitude: AttitudeState::from_vector(&start),
            ..base.clone()
        };
        let column = run_coupled(&run)?.final_attitude().to_vector() - forced;
        m.set_column(k, &column);
    }
    Ok(m)
}
