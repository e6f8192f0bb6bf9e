//! Built-in acceptance checks AC-1 … AC-9.
//!
//! Each check runs a fixed scenario and compares a measured quantity with
//! a pinned tolerance. The published matrix entries are held here as a
//! separate literal table, so a corrupted value in the context under test
//! is caught rather than compared with itself.

use std::fmt;
use std::time::Instant;

use nalgebra::Vector3;

use crate::attitude::ReferenceMatrices;
use crate::cli::config::RunConfig;
use crate::error::{Error, Result};
use crate::frames::EulerAngles;
use crate::gravity_gradient::{
    box_dumbbell, brute_force_gg_torque, gg_coefficients, gmu_coefficient, linearized_gg_moment, GgCoefficients,
    PlatformInertia,
};
use crate::orbit::{state_from_elements, EarthModel, KeplerianElements};
use crate::sim::analysis::{
    decays_after_peak, divergence_detector, dominant_period, measure_orbit_period, periodicity_error, window_envelope,
    zero_crossing_frequency, ENVELOPE_WINDOW_FRACTION,
};
use crate::sim::eigen::eigen_analysis;
use crate::sim::integrate::{integrate_orbit, run_coupled, state_space_at, Trajectory};
use crate::sim::scenario::{Scenario, Span, VehicleModel, REFERENCE_SEMI_MAJOR_AXIS_KM};

/// Published open-loop entries, row-major: A13, A21, A22, A23, A31, A32,
/// A33, B21, B31.
pub const PUBLISHED_ENTRIES: [(&str, f64); 9] = [
    ("a13", 3.7113),
    ("a21", 0.49773),
    ("a22", -9.7138e-4),
    ("a23", -3.4402e-5),
    ("a31", -4.0326),
    ("a32", 3.3636e-5),
    ("a33", -1.1912e-6),
    ("b21", -5.1218e-4),
    ("b31", 1.7735e-5),
];

pub const PERIOD_NOMINAL_S: f64 = 7225.0;
pub const PERIOD_TOLERANCE: f64 = 0.005;
pub const ORBIT_RUNTIME_LIMIT_S: f64 = 1.0;
pub const PERIGEE_ALTITUDE_RANGE_KM: (f64, f64) = (83.0, 86.0);
pub const CONSERVATION_TOLERANCE: f64 = 1e-9;
pub const ORDER_RANGE: (f64, f64) = (3.5, 4.5);
pub const GMU_TOLERANCE: f64 = 1e-12;
pub const ORACLE_TOLERANCE: f64 = 0.02;
pub const ORACLE_ANGLE_DEG: f64 = 1.0;
/// Accepted band for error(2°)/error(1°): 4 within a factor 1.5.
pub const GROWTH_RANGE: (f64, f64) = (4.0 / 1.5, 4.0 * 1.5);
pub const NUTATION_EIGEN_TOLERANCE: f64 = 0.001;
pub const NUTATION_SIM_TOLERANCE: f64 = 0.01;
pub const NUTATION_WINDOW_S: f64 = 100.0;
pub const LONG_PERIOD_TOLERANCE: f64 = 0.05;
pub const DELTA_N_PERIODICITY_TOLERANCE: f64 = 1e-6;
pub const DIVERGENCE_LOOKBACK: usize = 4;
pub const DIVERGENCE_RUN_ORBITS: f64 = 6.0;
pub const ALIGNMENT_TOLERANCE: f64 = 0.05;
pub const ALIGNMENT_INCLINATIONS_DEG: [f64; 3] = [0.0, 30.0, 60.0];

/// Inputs the checks depend on. The default holds the nominal Earth and
/// the published entries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationContext {
    pub earth: EarthModel,
    pub reference: ReferenceMatrices,
}

impl ValidationContext {
    pub fn from_config(config: &RunConfig) -> Result<Self> {
        Ok(Self {
            earth: config.earth()?,
            reference: config.reference_matrices(),
        })
    }

    fn scenario(&self, eccentricity: f64, inclination_deg: f64) -> Scenario {
        let mut s = Scenario::reference(eccentricity, inclination_deg);
        s.earth = self.earth;
        if let VehicleModel::Direct { matrices, .. } = &mut s.vehicle {
            *matrices = self.reference;
        }
        s
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {verdict} {}: {}", self.id, self.title, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub criteria: Vec<Criterion>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} criteria passed", self.criteria.len())
    }
}

fn criterion(id: &'static str, title: &'static str, check: impl FnOnce() -> Result<(bool, String)>) -> Criterion {
    let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    Criterion { id, title, passed, detail }
}

fn relative(measured: f64, expected: f64) -> f64 {
    (measured / expected - 1.0).abs()
}

pub type Check = fn(&ValidationContext) -> Criterion;

/// Every criterion in order.
pub const CHECKS: [Check; 9] = [
    orbital_period,
    perigee_altitude,
    conservation,
    point_mass_limit,
    oracle_equivalence,
    reference_matrix_fidelity,
    long_period_mode,
    libration_and_divergence,
    inclination_insensitivity,
];

pub fn validate_all(ctx: &ValidationContext) -> ValidationReport {
    ValidationReport {
        criteria: CHECKS.iter().map(|check| check(ctx)).collect(),
    }
}

/// AC-1: orbital period of the circular reference orbit.
pub fn orbital_period(ctx: &ValidationContext) -> Criterion {
    criterion("AC-1", "orbital period", || {
        let clock = Instant::now();
        let s = ctx.scenario(0.0, 0.0).with_span(Span::Orbits(2.0)).with_dt(1.0);
        let orbit = integrate_orbit(&s)?;
        let times: Vec<f64> = orbit.samples.iter().map(|x| x.t).collect();
        let positions: Vec<Vector3<f64>> = orbit.samples.iter().map(|x| x.state.position).collect();
        let period = measure_orbit_period(&times, &positions, &orbit.samples[0].state.velocity)
            .ok_or_else(|| Error::InsufficientSpan("no axis crossings".into()))?;
        let elapsed = clock.elapsed().as_secs_f64();
        let error = relative(period, PERIOD_NOMINAL_S);
        Ok((
            error <= PERIOD_TOLERANCE && elapsed < ORBIT_RUNTIME_LIMIT_S,
            format!("measured {period:.3} s, {:.3}% from {PERIOD_NOMINAL_S} s, runtime {elapsed:.3} s", 100.0 * error),
        ))
    })
}

/// AC-2: perigee altitude of the e = 0.2 reference orbit.
pub fn perigee_altitude(ctx: &ValidationContext) -> Criterion {
    criterion("AC-2", "perigee altitude", || {
        let s = ctx.scenario(0.2, 30.0).with_span(Span::Orbits(1.0)).with_dt(1.0);
        let orbit = integrate_orbit(&s)?;
        let min_radius = orbit.samples.iter().map(|x| x.radius).fold(f64::INFINITY, f64::min);
        let altitude = min_radius - ctx.earth.equatorial_radius;
        let (lo, hi) = PERIGEE_ALTITUDE_RANGE_KM;
        Ok((
            (lo..=hi).contains(&altitude),
            format!("minimum altitude {altitude:.3} km, accepted [{lo}, {hi}] km"),
        ))
    })
}

/// AC-3: energy and angular-momentum drift over one orbit at dt = 1 s, and
/// the observed order of the integrator under dt halving.
pub fn conservation(ctx: &ValidationContext) -> Criterion {
    criterion("AC-3", "conservation and integrator order", || {
        let s = ctx.scenario(0.2, 30.0).with_span(Span::Orbits(1.0)).with_dt(1.0);
        let orbit = integrate_orbit(&s)?;
        let first = orbit.samples[0].state;
        let last = orbit.samples[orbit.samples.len() - 1].state;
        let mu = ctx.earth.mu;
        let energy_drift = relative(last.specific_energy(mu), first.specific_energy(mu));
        let h0 = first.angular_momentum();
        let momentum_drift = (last.angular_momentum() - h0).norm() / h0.norm();
        let order = observed_order(ctx)?;
        let (lo, hi) = ORDER_RANGE;
        Ok((
            energy_drift < CONSERVATION_TOLERANCE && momentum_drift < CONSERVATION_TOLERANCE && (lo..=hi).contains(&order),
            format!("energy drift {energy_drift:.2e}, momentum drift {momentum_drift:.2e}, order {order:.3}"),
        ))
    })
}

/// Convergence order of the final coupled state for dt = 0.2, 0.1, 0.05 s
/// over a 60 s run spanning the default impulse.
pub fn observed_order(ctx: &ValidationContext) -> Result<f64> {
    let final_state = |dt: f64| -> Result<nalgebra::Vector6<f64>> {
        let s = ctx.scenario(0.2, 30.0).with_span(Span::Seconds(60.0)).with_dt(dt);
        Ok(run_coupled(&s)?.final_attitude().to_vector())
    };
    let (coarse, medium, fine) = (final_state(0.2)?, final_state(0.1)?, final_state(0.05)?);
    Ok(((coarse - medium).norm() / (medium - fine).norm()).log2())
}

/// AC-4: without J2 on the circular equatorial orbit the strength reduces
/// to 3μ/R³ and the linear torque to the axisymmetric textbook form.
pub fn point_mass_limit(ctx: &ValidationContext) -> Criterion {
    criterion("AC-4", "point-mass limit", || {
        let earth = ctx.earth.without_j2();
        let state = state_from_elements(&circular_equatorial(), &earth)?;
        let radius = state.radius();
        let g_mu = gmu_coefficient(radius, state.position.z, &earth)?;
        let expected = 3.0 * earth.mu / radius.powi(3);
        let gmu_error = relative(g_mu, expected);

        let inertia = PlatformInertia::new(900.0, 1000.0, 400.0, 0.0);
        let (phi, theta) = (0.01, -0.02);
        let torque = linearized_gg_moment(&gg_coefficients(g_mu, &inertia), phi, theta);
        let textbook = Vector3::new(
            expected * (inertia.i_z - inertia.i_y) * phi,
            expected * (inertia.i_z - inertia.i_x) * theta,
            0.0,
        );
        let torque_error = (torque - textbook).norm() / textbook.norm();
        Ok((
            gmu_error <= GMU_TOLERANCE && torque_error <= GMU_TOLERANCE && torque.z == 0.0,
            format!("g_mu error {gmu_error:.2e}, torque error {torque_error:.2e}"),
        ))
    })
}

fn circular_equatorial() -> KeplerianElements {
    KeplerianElements::from_degrees(REFERENCE_SEMI_MAJOR_AXIS_KM, 0.0, 0.0, 0.0, 0.0, 0.0)
}

/// Oracle body used by AC-5: the point-mass realization of the
/// gravity-gradient inertias of the default direct-mode vehicle.
pub fn reference_dumbbell() -> Result<(PlatformInertia, Vec<crate::gravity_gradient::MassElement>)> {
    let inertia = crate::attitude::SatelliteParams::reference_consistent().platform_inertia();
    Ok((inertia, box_dumbbell(&inertia, 1.0)?))
}

/// Linearization error of the torque perturbation about the nominal
/// attitude, absolute (N·m) and relative to the linear torque.
pub fn oracle_error(angles: &EulerAngles, ctx: &ValidationContext) -> Result<(f64, f64)> {
    let earth = ctx.earth.without_j2();
    let state = state_from_elements(&circular_equatorial(), &earth)?;
    let (inertia, body) = reference_dumbbell()?;
    let exact = brute_force_gg_torque(&body, &state, angles, &earth)?
        - brute_force_gg_torque(&body, &state, &EulerAngles::default(), &earth)?;
    let g_mu = gmu_coefficient(state.radius(), state.position.z, &earth)?;
    let linear = linearized_gg_moment(&gg_coefficients(g_mu, &inertia), angles.roll, angles.pitch);
    let error = (exact - linear).norm();
    Ok((error, error / linear.norm()))
}

/// AC-5: brute-force torque against the linear model at 1° and 2° roll
/// and pitch offsets.
pub fn oracle_equivalence(ctx: &ValidationContext) -> Criterion {
    criterion("AC-5", "oracle equivalence", || {
        let a = ORACLE_ANGLE_DEG;
        // single-axis offsets decide; the combined offset is reported only
        let cases = [("roll", (a, 0.0), true), ("pitch", (0.0, a), true), ("roll+pitch", (a, a), false)];
        let mut passed = true;
        let mut parts = Vec::new();
        for (name, (roll, pitch), gating) in cases {
            let (e1, rel1) = oracle_error(&EulerAngles::from_degrees(roll, pitch, 0.0), ctx)?;
            let (e2, _) = oracle_error(&EulerAngles::from_degrees(2.0 * roll, 2.0 * pitch, 0.0), ctx)?;
            let growth = e2 / e1;
            if gating {
                passed &= rel1 <= ORACLE_TOLERANCE && (GROWTH_RANGE.0..=GROWTH_RANGE.1).contains(&growth);
            }
            let note = if gating { "" } else { " (info)" };
            parts.push(format!("{name} {:.3}% growth {growth:.2}{note}", 100.0 * rel1));
        }
        Ok((passed, parts.join(", ")))
    })
}

fn published(name: &str) -> f64 {
    PUBLISHED_ENTRIES.iter().find(|(k, _)| *k == name).map(|(_, v)| *v).unwrap_or(f64::NAN)
}

/// Nutation frequency implied by the published A13 and A31.
pub fn published_nutation_frequency() -> f64 {
    (-published("a13") * published("a31")).sqrt()
}

/// AC-6: the direct mode carries the published entries bit-for-bit from a
/// scenario file, and the nutation frequency appears both in the spectrum
/// and in the simulated roll rate.
pub fn reference_matrix_fidelity(ctx: &ValidationContext) -> Criterion {
    criterion("AC-6", "reference matrix fidelity", || {
        let text: String = ctx
            .reference
            .entries()
            .iter()
            .map(|(k, v)| format!("{k} = {v:?}\n"))
            .chain(std::iter::once("mode = \"direct\"\n".to_string()))
            .collect();
        let config = RunConfig::from_toml_str(&text)?;
        let ss = config.vehicle().assemble(&GgCoefficients::zero(), 0.0)?;
        let loaded = [
            ss.a[(0, 2)],
            ss.a[(1, 0)],
            ss.a[(1, 1)],
            ss.a[(1, 2)],
            ss.a[(2, 0)],
            ss.a[(2, 1)],
            ss.a[(2, 2)],
            ss.b[(1, 0)],
            ss.b[(2, 0)],
        ];
        let mismatched: Vec<&str> = PUBLISHED_ENTRIES
            .iter()
            .zip(loaded)
            .filter(|((_, want), got)| want.to_bits() != got.to_bits())
            .map(|((name, _), _)| *name)
            .collect();

        let omega = published_nutation_frequency();
        let scenario = ctx.scenario(0.2, 30.0);
        let spectrum = eigen_analysis(&state_space_at(&scenario, 0.0)?.a)?;
        let pair = |sign: f64| {
            spectrum
                .values
                .iter()
                .map(|z| relative(sign * z.im, omega) + z.re.abs() / omega)
                .fold(f64::INFINITY, f64::min)
        };
        let eigen_error = pair(1.0).max(pair(-1.0));

        let run = run_coupled(&scenario.clone().with_span(Span::Seconds(
            scenario.input.segments()[0].end + NUTATION_WINDOW_S + 1.0,
        )))?;
        let sim_omega = roll_rate_frequency(&run, scenario.input.segments()[0].end)
            .ok_or_else(|| Error::InsufficientSpan("roll rate does not oscillate".into()))?;
        let sim_error = relative(sim_omega, omega);

        let passed = mismatched.is_empty() && eigen_error <= NUTATION_EIGEN_TOLERANCE && sim_error <= NUTATION_SIM_TOLERANCE;
        let entries = if mismatched.is_empty() {
            "entries exact".to_string()
        } else {
            format!("entries differ: {}", mismatched.join(" "))
        };
        Ok((
            passed,
            format!(
                "{entries}, eigen pair {:.4}% from {omega:.4} rad/s, p(t) at {sim_omega:.4} rad/s ({:.3}%)",
                100.0 * eigen_error,
                100.0 * sim_error
            ),
        ))
    })
}

/// Zero-crossing frequency of p(t) over the window after the impulse.
pub fn roll_rate_frequency(trajectory: &Trajectory, impulse_end: f64) -> Option<f64> {
    let window: Vec<_> = trajectory
        .samples
        .iter()
        .filter(|s| s.t >= impulse_end && s.t <= impulse_end + NUTATION_WINDOW_S)
        .collect();
    let times: Vec<f64> = window.iter().map(|s| s.t).collect();
    let p: Vec<f64> = window.iter().map(|s| s.attitude.p).collect();
    zero_crossing_frequency(&times, &p)
}

/// AC-7: θ_s oscillates at the orbital period and δn repeats each orbit.
pub fn long_period_mode(ctx: &ValidationContext) -> Criterion {
    criterion("AC-7", "long-period mode", || {
        let s = ctx.scenario(0.2, 30.0);
        let run = run_coupled(&s)?;
        let times = run.times();
        let period = run.orbital_period;
        let theta_period =
            dominant_period(&times, &run.theta_s()).ok_or_else(|| Error::InsufficientSpan("no dominant period".into()))?;
        let period_error = relative(theta_period, period);
        let repeat = periodicity_error(&times, &run.channel(|x| x.delta_n), period)
            .ok_or_else(|| Error::InsufficientSpan("shorter than one orbit".into()))?;
        Ok((
            period_error <= LONG_PERIOD_TOLERANCE && repeat < DELTA_N_PERIODICITY_TOLERANCE,
            format!(
                "theta_s period {theta_period:.1} s vs orbit {period:.1} s ({:.2}%), delta_n repetition {repeat:.2e}",
                100.0 * period_error
            ),
        ))
    })
}

/// AC-8: the roll envelope decays after its peak on the circular orbit, and
/// the lateral/directional channels diverge on the e = 0.2 orbit.
pub fn libration_and_divergence(ctx: &ValidationContext) -> Criterion {
    criterion("AC-8", "libration decay and divergence", || {
        let circular = run_coupled(&ctx.scenario(0.0, 30.0).with_span(Span::Orbits(1.0)))?;
        let envelope = window_envelope(
            &circular.times(),
            &circular.phi_s(),
            ENVELOPE_WINDOW_FRACTION * circular.orbital_period,
        );
        let decays = decays_after_peak(&envelope);
        let peaks: Vec<String> = envelope.iter().map(|w| format!("{:.2e}", w.peak)).collect();

        let elliptic = run_coupled(&ctx.scenario(0.2, 30.0).with_span(Span::Orbits(DIVERGENCE_RUN_ORBITS)))?;
        let report = divergence_detector(&elliptic, DIVERGENCE_LOOKBACK)?;
        let orbit_peaks = |v: &[f64]| v.iter().map(|p| format!("{p:.2e}")).collect::<Vec<_>>().join(" ");
        Ok((
            decays && report.diverges(),
            format!(
                "circular phi_s envelope [{}] decays={decays}; e=0.2 per-orbit peaks phi_s [{}] psi_s [{}] diverges={}",
                peaks.join(" "),
                orbit_peaks(&report.roll.orbit_peaks),
                orbit_peaks(&report.yaw.orbit_peaks),
                report.diverges()
            ),
        ))
    })
}

/// AC-9: θ_s barely depends on inclination at e = 0.2.
pub fn inclination_insensitivity(ctx: &ValidationContext) -> Criterion {
    criterion("AC-9", "inclination insensitivity", || {
        let runs: Vec<Vec<f64>> = ALIGNMENT_INCLINATIONS_DEG
            .iter()
            .map(|&i| run_coupled(&ctx.scenario(0.2, i)).map(|t| t.theta_s()))
            .collect::<Result<_>>()?;
        let peak_to_peak = |v: &[f64]| {
            let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(*x), hi.max(*x)));
            hi - lo
        };
        let mut worst = 0.0_f64;
        for a in 0..runs.len() {
            for b in a + 1..runs.len() {
                let diff = runs[a].iter().zip(&runs[b]).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
                worst = worst.max(diff / peak_to_peak(&runs[a]).min(peak_to_peak(&runs[b])));
            }
        }
        Ok((
            worst < ALIGNMENT_TOLERANCE,
            format!("largest pairwise difference {:.3}% of peak-to-peak", 100.0 * worst),
        ))
    })
}
