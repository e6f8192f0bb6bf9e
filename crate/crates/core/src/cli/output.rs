//! CSV telemetry and summary files.
//!
//! Every CSV starts with one `#` line naming the schema, its version, the
//! orbital period and the column units, followed by the column header.
//! Numbers carry 17 significant digits so they read back bit-exact.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::attitude::ReferenceMatrices;
use crate::error::{Error, Result};
use crate::sim::analysis::{divergence_detector, DivergenceReport};
use crate::sim::eigen::EigenAnalysis;
use crate::sim::integrate::{OrbitTrajectory, Trajectory};
use crate::sim::scenario::{Scenario, VehicleModel};
use crate::sim::sweep::{cell_metrics, SweepRow};

pub const SCHEMA_VERSION: u32 = 1;

pub const ORBIT_COLUMNS: [&str; 10] = ["t", "R_X1", "R_Y1", "R_Z1", "V_X1", "V_Y1", "V_Z1", "R", "V_theta", "n"];
pub const ATTITUDE_COLUMNS: [&str; 9] = ["p", "q", "r", "phi_s", "theta_s", "psi_s", "delta_n", "delta_e", "g_mu"];
pub const EIG_COLUMNS: [&str; 5] = ["index", "re", "im", "abs", "residual"];
pub const SWEEP_COLUMNS: [&str; 10] = [
    "e",
    "i_deg",
    "status",
    "peak_theta_s",
    "peak_phi_s",
    "peak_psi_s",
    "theta_period_s",
    "diverges",
    "settling_time_s",
    "error",
];

const ORBIT_UNITS: &str = "t[s] R[km] V[km/s] n[rad/s]";
const ATTITUDE_UNITS: &str = "p,q,r[rad/s] phi_s,theta_s,psi_s[deg] delta_n[rad/s] delta_e[V] g_mu[1/s^2]";

/// Round-trip formatting of one value.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn start<W: Write>(mut out: W, kind: &str, period: Option<f64>, units: &str, columns: &[&str]) -> Result<csv::Writer<W>> {
    let period = period.map(|p| format!(" period_s={}", format_value(p))).unwrap_or_default();
    writeln!(out, "# dualspin-{kind} v{SCHEMA_VERSION}{period} units: {units}")?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(columns).map_err(csv_error)?;
    Ok(writer)
}

fn finish<W: Write>(mut writer: csv::Writer<W>) -> Result<()> {
    writer.flush()?;
    Ok(())
}

pub fn write_orbit_csv<W: Write>(out: W, trajectory: &OrbitTrajectory, period: f64) -> Result<()> {
    let mut w = start(out, "orbit", Some(period), ORBIT_UNITS, &ORBIT_COLUMNS)?;
    for s in &trajectory.samples {
        let (r, v) = (s.state.position, s.state.velocity);
        let row = [s.t, r.x, r.y, r.z, v.x, v.y, v.z, s.radius, s.v_theta, s.n];
        w.write_record(row.iter().map(|v| format_value(*v))).map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_trajectory_csv<W: Write>(out: W, trajectory: &Trajectory) -> Result<()> {
    let columns: Vec<&str> = ORBIT_COLUMNS.iter().chain(&ATTITUDE_COLUMNS).copied().collect();
    let units = format!("{ORBIT_UNITS} {ATTITUDE_UNITS}");
    let mut w = start(out, "trajectory", Some(trajectory.orbital_period), &units, &columns)?;
    for s in &trajectory.samples {
        let (r, v, x) = (s.orbit.position, s.orbit.velocity, s.attitude);
        let row = [
            s.t,
            r.x,
            r.y,
            r.z,
            v.x,
            v.y,
            v.z,
            s.radius,
            s.v_theta,
            s.n,
            x.p,
            x.q,
            x.r,
            x.phi_s.to_degrees(),
            x.theta_s.to_degrees(),
            x.psi_s.to_degrees(),
            s.delta_n,
            s.delta_e,
            s.g_mu,
        ];
        w.write_record(row.iter().map(|v| format_value(*v))).map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_eig_csv<W: Write>(out: W, analysis: &EigenAnalysis) -> Result<()> {
    let mut w = start(out, "eig", None, "re,im,abs[1/s]", &EIG_COLUMNS)?;
    for (k, (z, residual)) in analysis.values.iter().zip(&analysis.residuals).enumerate() {
        let mut row = vec![k.to_string()];
        row.extend([z.re, z.im, z.norm(), *residual].iter().map(|v| format_value(*v)));
        w.write_record(&row).map_err(csv_error)?;
    }
    finish(w)
}

fn optional(v: Option<f64>) -> String {
    v.map(format_value).unwrap_or_default()
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = start(out, "sweep", None, "peaks[deg] periods,times[s]", &SWEEP_COLUMNS)?;
    for row in rows {
        let mut record = vec![format_value(row.eccentricity), format_value(row.inclination_deg)];
        match &row.outcome {
            Ok(m) => {
                record.push("ok".into());
                record.extend(
                    [m.peak_theta, m.peak_phi, m.peak_psi]
                        .iter()
                        .map(|v| format_value(v.to_degrees())),
                );
                record.push(optional(m.theta_period));
                record.push(m.diverges.map(|d| d.to_string()).unwrap_or_default());
                record.push(optional(m.settling_time));
                record.push(String::new());
            }
            Err(e) => {
                record.push("failed".into());
                record.extend(std::iter::repeat_n(String::new(), 6));
                record.push(e.to_string());
            }
        }
        w.write_record(&record).map_err(csv_error)?;
    }
    finish(w)
}

/// Metrics block written next to a trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub mode: String,
    pub eccentricity: f64,
    pub inclination_deg: f64,
    pub orbital_period_s: f64,
    pub duration_s: f64,
    pub dt_s: f64,
    pub samples: usize,
    pub peak_theta_s_deg: f64,
    pub peak_phi_s_deg: f64,
    pub peak_psi_s_deg: f64,
    /// Dominant period of θ_s.
    pub period_estimate_s: Option<f64>,
    /// Settling time of the φ_s envelope.
    pub settling_time_s: Option<f64>,
    /// "diverges", "bounded" or "undetermined" when the run is too short.
    pub divergence: String,
    pub divergence_onset_s: Option<f64>,
    pub small_angle_exceeded_at_s: Option<f64>,
    /// Static entries in use, echoed in direct mode.
    pub matrices: Option<BTreeMap<String, f64>>,
}

impl Summary {
    pub fn new(scenario: &Scenario, trajectory: &Trajectory, lookback: usize) -> Self {
        let metrics = cell_metrics(trajectory);
        let divergence: Option<DivergenceReport> = divergence_detector(trajectory, lookback).ok();
        let matrices = match &scenario.vehicle {
            VehicleModel::Direct { matrices, .. } => Some(echo(matrices)),
            VehicleModel::Builder(_) => None,
        };
        Self {
            schema_version: SCHEMA_VERSION,
            mode: if scenario.vehicle.is_direct() { "direct" } else { "builder" }.into(),
            eccentricity: scenario.elements.eccentricity,
            inclination_deg: scenario.elements.inclination.to_degrees(),
            orbital_period_s: trajectory.orbital_period,
            duration_s: trajectory.samples.last().map_or(0.0, |s| s.t),
            dt_s: trajectory.dt,
            samples: trajectory.samples.len(),
            peak_theta_s_deg: metrics.peak_theta.to_degrees(),
            peak_phi_s_deg: metrics.peak_phi.to_degrees(),
            peak_psi_s_deg: metrics.peak_psi.to_degrees(),
            period_estimate_s: metrics.theta_period,
            settling_time_s: metrics.settling_time,
            divergence: match &divergence {
                Some(d) if d.diverges() => "diverges",
                Some(_) => "bounded",
                None => "undetermined",
            }
            .into(),
            divergence_onset_s: divergence.as_ref().and_then(|d| d.onset()),
            small_angle_exceeded_at_s: trajectory.small_angle_exceeded_at,
            matrices,
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Io(e.to_string()))
    }
}

fn echo(matrices: &ReferenceMatrices) -> BTreeMap<String, f64> {
    matrices.entries().iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::integrate::integrate_orbit;
    use crate::sim::scenario::Span;

    #[test]
    fn values_round_trip() {
        for v in [0.1, -3.4402e-5, std::f64::consts::PI, 7_225.668_7, 1e-300] {
            assert_eq!(format_value(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn header_only_for_zero_duration() {
        let s = Scenario::reference(0.0, 0.0).with_span(Span::Seconds(0.0)).with_dt(1.0);
        let traj = integrate_orbit(&s).unwrap();
        let mut buf = Vec::new();
        write_orbit_csv(&mut buf, &traj, 1.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("# dualspin-orbit v1"));
        assert_eq!(lines[1], ORBIT_COLUMNS.join(","));
    }

    #[test]
    fn failed_sweep_cell_keeps_column_count() {
        let rows = vec![SweepRow {
            eccentricity: 1.5,
            inclination_deg: 0.0,
            outcome: Err(Error::InvalidElements("eccentricity must lie in [0, 1), got 1.5".into())),
        }];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let record = reader.records().next().unwrap().unwrap();
        assert_eq!(record.len(), SWEEP_COLUMNS.len());
        assert_eq!(&record[2], "failed");
    }
}
