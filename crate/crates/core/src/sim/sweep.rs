//! Parameter sweeps over eccentricity and inclination.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sim::analysis::{
    detect_divergence, dominant_period, settling_time, window_envelope, ENVELOPE_WINDOW_FRACTION, SETTLING_BAND,
};
use crate::sim::integrate::{run_coupled, Trajectory};
use crate::sim::scenario::Scenario;

/// Orbits of look-back used for the divergence verdict in sweeps.
pub const SWEEP_DIVERGENCE_LOOKBACK: usize = 4;

/// Summary metrics of one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellMetrics {
    /// Peak |θ_s|, |φ_s|, |ψ_s| over the run (rad).
    pub peak_theta: f64,
    pub peak_phi: f64,
    pub peak_psi: f64,
    /// Dominant period of θ_s (s).
    pub theta_period: Option<f64>,
    /// None when the run is too short for a verdict.
    pub diverges: Option<bool>,
    /// Settling time of the φ_s envelope (s).
    pub settling_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub eccentricity: f64,
    pub inclination_deg: f64,
    pub outcome: Result<CellMetrics>,
}

fn peak(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn cell_metrics(trajectory: &Trajectory) -> CellMetrics {
    let times = trajectory.times();
    let (theta, phi, psi) = (trajectory.theta_s(), trajectory.phi_s(), trajectory.psi_s());
    let period = trajectory.orbital_period;
    let diverges = match (
        detect_divergence(&times, &phi, period, SWEEP_DIVERGENCE_LOOKBACK),
        detect_divergence(&times, &psi, period, SWEEP_DIVERGENCE_LOOKBACK),
    ) {
        (Ok(a), Ok(b)) => Some(a.diverges || b.diverges),
        _ => None,
    };
    let envelope = window_envelope(&times, &phi, ENVELOPE_WINDOW_FRACTION * period);
    CellMetrics {
        peak_theta: peak(&theta),
        peak_phi: peak(&phi),
        peak_psi: peak(&psi),
        theta_period: dominant_period(&times, &theta),
        diverges,
        settling_time: settling_time(&envelope, SETTLING_BAND),
    }
}

/// Runs `template` on every (e, i) pair, e outermost, in parallel on
/// `jobs` threads (0 picks the rayon default). Row order follows the grid
/// and each cell carries its own result.
pub fn sweep(template: &Scenario, eccentricities: &[f64], inclinations_deg: &[f64], jobs: usize) -> Result<Vec<SweepRow>> {
    let grid: Vec<(f64, f64)> = eccentricities
        .iter()
        .flat_map(|&e| inclinations_deg.iter().map(move |&i| (e, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        grid.par_iter()
            .map(|&(e, i)| {
                let mut scenario = template.clone();
                scenario.elements.eccentricity = e;
                scenario.elements.inclination = i.to_radians();
                let outcome = run_coupled(&scenario).map(|t| cell_metrics(&t));
                if let Err(err) = &outcome {
                    log::warn!("sweep cell e = {e}, i = {i}: {err}");
                }
                SweepRow {
                    eccentricity: e,
                    inclination_deg: i,
                    outcome,
                }
            })
            .collect()
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::scenario::Span;

    #[test]
    fn empty_grid() {
        let rows = sweep(&Scenario::reference(0.0, 0.0), &[], &[30.0], 1).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn order_and_failure_isolation() {
        let template = Scenario::reference(0.0, 0.0).with_span(Span::Seconds(50.0)).with_dt(0.5);
        let rows = sweep(&template, &[0.0, 1.5, 0.1], &[0.0, 45.0], 3).unwrap();
        let keys: Vec<(f64, f64)> = rows.iter().map(|r| (r.eccentricity, r.inclination_deg)).collect();
        assert_eq!(keys, vec![(0.0, 0.0), (0.0, 45.0), (1.5, 0.0), (1.5, 45.0), (0.1, 0.0), (0.1, 45.0)]);
        assert!(rows[2].outcome.is_err() && rows[3].outcome.is_err());
        assert!(rows[0].outcome.is_ok() && rows[5].outcome.is_ok());
        // too short for a divergence verdict
        assert_eq!(rows[0].outcome.as_ref().unwrap().diverges, None);
    }
}
