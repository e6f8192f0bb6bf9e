//! Signal metrics on sampled trajectories: peak envelopes, decay and
//! settling, period estimates and divergence detection.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::sim::integrate::Trajectory;

/// Envelope windows span this fraction of the orbital period.
pub const ENVELOPE_WINDOW_FRACTION: f64 = 1.0 / 8.0;
/// Minimum per-orbit envelope growth counted as divergence.
pub const DIVERGENCE_GROWTH: f64 = 1.10;
/// Settling band around the final envelope value.
pub const SETTLING_BAND: f64 = 0.05;

const AUTOCORRELATION_POINTS: usize = 4096;

fn sample_step(times: &[f64]) -> f64 {
    if times.len() < 2 {
        0.0
    } else {
        (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64
    }
}

/// Splits `[t₀, t_end]` into consecutive windows of `width` and returns
/// the `[start, end)` sample index ranges of the complete ones. A window
/// counts as complete when the record reaches within one step of its end.
fn complete_windows(times: &[f64], width: f64) -> Vec<(f64, usize, usize)> {
    if times.len() < 2 || !(width > 0.0) {
        return Vec::new();
    }
    let t0 = times[0];
    let dt = sample_step(times);
    let span = times[times.len() - 1] - t0;
    let count = ((span + dt) / width + 1e-9).floor() as usize;
    let mut out = Vec::with_capacity(count);
    let mut begin = 0;
    for k in 0..count {
        let end_time = t0 + (k + 1) as f64 * width;
        let end = begin + times[begin..].partition_point(|&t| t < end_time);
        if end > begin {
            out.push((t0 + k as f64 * width, begin, end));
        }
        begin = end;
    }
    out
}

/// Peak |value| over one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeWindow {
    pub start: f64,
    pub peak: f64,
}

/// Per-window peak of |values| over complete windows of `width` seconds.
pub fn window_envelope(times: &[f64], values: &[f64], width: f64) -> Vec<EnvelopeWindow> {
    complete_windows(times, width)
        .into_iter()
        .map(|(start, i, j)| EnvelopeWindow {
            start,
            peak: values[i..j].iter().fold(0.0, |m, v| m.max(v.abs())),
        })
        .collect()
}

/// True when, from the window holding the envelope maximum onwards, every
/// window peak is no larger than the one before and the last is strictly
/// below the maximum.
pub fn decays_after_peak(envelope: &[EnvelopeWindow]) -> bool {
    let Some((peak_index, peak)) = envelope
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.peak.total_cmp(&b.1.peak))
    else {
        return false;
    };
    let tail = &envelope[peak_index..];
    tail.len() >= 2
        && tail.windows(2).all(|w| w[1].peak <= w[0].peak)
        && tail[tail.len() - 1].peak < peak.peak
}

/// Start of the first window after which the envelope stays within
/// `band` (relative) of its final value.
pub fn settling_time(envelope: &[EnvelopeWindow], band: f64) -> Option<f64> {
    let last = envelope.last()?.peak;
    let tolerance = band * last.abs();
    let mut settled_from = envelope.len() - 1;
    for k in (0..envelope.len()).rev() {
        if (envelope[k].peak - last).abs() <= tolerance {
            settled_from = k;
        } else {
            break;
        }
    }
    Some(envelope[settled_from].start)
}

/// Linearly interpolated sign changes of `values`.
pub fn zero_crossings(times: &[f64], values: &[f64]) -> Vec<f64> {
    times
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| (v[0] < 0.0) != (v[1] < 0.0))
        .map(|(t, v)| t[0] + (t[1] - t[0]) * v[0] / (v[0] - v[1]))
        .collect()
}

/// Angular frequency (rad/s) from the spacing of zero crossings: each
/// crossing marks half a cycle.
pub fn zero_crossing_frequency(times: &[f64], values: &[f64]) -> Option<f64> {
    let crossings = zero_crossings(times, values);
    if crossings.len() < 3 {
        return None;
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Some(std::f64::consts::PI * (crossings.len() - 1) as f64 / span)
}

/// Dominant oscillation period from the first positive local maximum of
/// the autocorrelation after the correlation has gone negative.
///
/// The series is block-averaged to at most 4096 points first; lags up to
/// three quarters of the record are examined.
pub fn dominant_period(times: &[f64], values: &[f64]) -> Option<f64> {
    if values.len() < 8 {
        return None;
    }
    let block = values.len().div_ceil(AUTOCORRELATION_POINTS);
    let series: Vec<f64> = values.chunks_exact(block).map(|c| c.iter().sum::<f64>() / block as f64).collect();
    let step = sample_step(times) * block as f64;
    let n = series.len();

    let correlation = |lag: usize| -> f64 {
        let a = &series[..n - lag];
        let b = &series[lag..];
        pearson(a, b)
    };
    let max_lag = (3 * n) / 4;
    let r: Vec<f64> = (0..=max_lag).map(correlation).collect();
    let first_negative = r.iter().position(|&v| v < 0.0)?;
    let best = (first_negative.max(1)..max_lag).find(|&k| r[k] > 0.0 && r[k] >= r[k - 1] && r[k] >= r[k + 1])?;
    let (y0, y1, y2) = (r[best - 1], r[best], r[best + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    let shift = if curvature < 0.0 { 0.5 * (y0 - y2) / curvature } else { 0.0 };
    Some((best as f64 + shift) * step)
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        0.0
    } else {
        sab / (saa * sbb).sqrt()
    }
}

/// Orbital period from successive passages through the epoch radius
/// direction (the +X axis for the reference orbits), interpolated
/// linearly between samples.
pub fn measure_orbit_period(times: &[f64], positions: &[Vector3<f64>], velocity0: &Vector3<f64>) -> Option<f64> {
    let r0 = positions.first()?.normalize();
    let normal = r0.cross(velocity0).normalize();
    let along = normal.cross(&r0);
    let mut crossings = Vec::new();
    for k in 0..positions.len().saturating_sub(1) {
        let (y0, y1) = (positions[k].dot(&along), positions[k + 1].dot(&along));
        if y0 <= 0.0 && y1 > 0.0 && positions[k].dot(&r0) > 0.0 {
            crossings.push(times[k] + (times[k + 1] - times[k]) * (-y0) / (y1 - y0));
        }
    }
    if crossings.len() < 2 {
        return None;
    }
    Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// Largest |x(t + period) − x(t)| over the record, relative to max |x|,
/// with x(t + period) linearly interpolated.
pub fn periodicity_error(times: &[f64], values: &[f64], period: f64) -> Option<f64> {
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let last = *times.last()?;
    let mut worst = 0.0_f64;
    let mut seen = false;
    for (t, v) in times.iter().zip(values) {
        let target = t + period;
        if target > last {
            break;
        }
        let j = times.partition_point(|&s| s <= target).min(times.len() - 1).max(1);
        let (ta, tb) = (times[j - 1], times[j]);
        let w = if tb > ta { (target - ta) / (tb - ta) } else { 0.0 };
        let shifted = values[j - 1] + w * (values[j] - values[j - 1]);
        worst = worst.max((shifted - v).abs());
        seen = true;
    }
    if !seen {
        return None;
    }
    Some(if scale > 0.0 { worst / scale } else { worst })
}

/// Divergence verdict for one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDivergence {
    pub diverges: bool,
    /// Start of the orbit where the final run of growth began.
    pub onset: Option<f64>,
    /// Peak |value| of every complete orbit.
    pub orbit_peaks: Vec<f64>,
}

/// Flags a channel whose per-orbit peak grows by more than 10% per orbit
/// across each of the final `lookback` orbits.
pub fn detect_divergence(times: &[f64], values: &[f64], period: f64, lookback: usize) -> Result<ChannelDivergence> {
    if lookback == 0 {
        return Err(Error::InsufficientSpan("lookback must be at least one orbit".into()));
    }
    let envelope = window_envelope(times, values, period);
    let peaks: Vec<f64> = envelope.iter().map(|w| w.peak).collect();
    if peaks.len() < lookback + 1 {
        return Err(Error::InsufficientSpan(format!(
            "{} complete orbits, {} needed for a lookback of {lookback}",
            peaks.len(),
            lookback + 1
        )));
    }
    let grows = |k: usize| peaks[k] > DIVERGENCE_GROWTH * peaks[k - 1];
    let n = peaks.len();
    let diverges = (n - lookback..n).all(grows);
    let onset = diverges.then(|| {
        let mut first = n - lookback;
        while first > 1 && grows(first - 1) {
            first -= 1;
        }
        envelope[first].start
    });
    Ok(ChannelDivergence {
        diverges,
        onset,
        orbit_peaks: peaks,
    })
}

/// Divergence verdicts for the lateral (φ_s) and directional (ψ_s) channels.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    pub roll: ChannelDivergence,
    pub yaw: ChannelDivergence,
}

impl DivergenceReport {
    pub fn diverges(&self) -> bool {
        self.roll.diverges || self.yaw.diverges
    }

    pub fn onset(&self) -> Option<f64> {
        match (self.roll.onset, self.yaw.onset) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

pub fn divergence_detector(trajectory: &Trajectory, lookback: usize) -> Result<DivergenceReport> {
    let times = trajectory.times();
    let period = trajectory.orbital_period;
    Ok(DivergenceReport {
        roll: detect_divergence(&times, &trajectory.phi_s(), period, lookback)?,
        yaw: detect_divergence(&times, &trajectory.psi_s(), period, lookback)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, dt: f64) -> Vec<f64> {
        (0..n).map(|k| k as f64 * dt).collect()
    }

    #[test]
    fn decaying_exponential_does_not_diverge() {
        let t = grid(6001, 1.0);
        let x: Vec<f64> = t.iter().map(|t| (-t / 2000.0).exp() * (0.05 * t).sin()).collect();
        let d = detect_divergence(&t, &x, 1000.0, 4).unwrap();
        assert!(!d.diverges);
        assert_eq!(d.onset, None);
        assert_eq!(d.orbit_peaks.len(), 6);
    }

    #[test]
    fn growing_envelope_diverges() {
        let t = grid(6001, 1.0);
        let x: Vec<f64> = t.iter().map(|t| 1.5f64.powf(t / 1000.0) * (0.05 * t).sin()).collect();
        let d = detect_divergence(&t, &x, 1000.0, 4).unwrap();
        assert!(d.diverges);
        assert_eq!(d.onset, Some(1000.0));
    }

    #[test]
    fn short_record_is_rejected() {
        let t = grid(3001, 1.0);
        let x = vec![1.0; 3001];
        assert!(matches!(detect_divergence(&t, &x, 1000.0, 4), Err(Error::InsufficientSpan(_))));
    }

    #[test]
    fn envelope_windows_tolerate_floor_truncation() {
        // record ends just short of 3 periods
        let t = grid(3000, 1.0);
        let x = vec![1.0; 3000];
        assert_eq!(window_envelope(&t, &x, 1000.0).len(), 3);
        assert_eq!(window_envelope(&t, &x, 1000.0)[2].start, 2000.0);
    }

    #[test]
    fn decay_detection() {
        let env = |peaks: &[f64]| -> Vec<EnvelopeWindow> {
            peaks.iter().enumerate().map(|(k, &p)| EnvelopeWindow { start: k as f64, peak: p }).collect()
        };
        assert!(decays_after_peak(&env(&[1.0, 3.0, 2.0, 1.5])));
        assert!(!decays_after_peak(&env(&[1.0, 3.0, 2.0, 2.5])));
        assert!(!decays_after_peak(&env(&[1.0, 2.0, 3.0])));
        assert!(!decays_after_peak(&env(&[])));
    }

    #[test]
    fn settling() {
        let env: Vec<EnvelopeWindow> = [5.0, 3.0, 1.2, 1.04, 1.0, 1.0]
            .iter()
            .enumerate()
            .map(|(k, &p)| EnvelopeWindow { start: k as f64 * 10.0, peak: p })
            .collect();
        assert_eq!(settling_time(&env, 0.05), Some(30.0));
        assert_eq!(settling_time(&[], 0.05), None);
    }

    #[test]
    fn zero_crossing_frequency_of_sine() {
        let t = grid(10_001, 0.01);
        let x: Vec<f64> = t.iter().map(|t| (3.0 * t + 0.2).sin()).collect();
        let w = zero_crossing_frequency(&t, &x).unwrap();
        assert!((w - 3.0).abs() < 1e-4, "{w}");
    }

    #[test]
    fn dominant_period_of_offset_wave() {
        let t = grid(20_001, 1.0);
        let x: Vec<f64> = t
            .iter()
            .map(|t| 3.0 + (std::f64::consts::TAU * t / 7000.0).sin() + 0.3 * (std::f64::consts::TAU * t / 3500.0).cos())
            .collect();
        let p = dominant_period(&t, &x).unwrap();
        assert!((p / 7000.0 - 1.0).abs() < 0.01, "{p}");
        assert_eq!(dominant_period(&t, &vec![1.0; 20_001]), None);
    }

    #[test]
    fn periodicity_of_sine() {
        let t = grid(2001, 0.5);
        let x: Vec<f64> = t.iter().map(|t| (std::f64::consts::TAU * t / 200.0).sin()).collect();
        assert!(periodicity_error(&t, &x, 200.0).unwrap() < 1e-12);
        assert!(periodicity_error(&t, &x, 150.0).unwrap() > 0.5);
    }

    #[test]
    fn orbit_period_from_axis_crossings() {
        let w = std::f64::consts::TAU / 100.0;
        let t = grid(2501, 0.1);
        let pos: Vec<Vector3<f64>> = t.iter().map(|t| Vector3::new((w * t).cos(), (w * t).sin(), 0.0)).collect();
        let p = measure_orbit_period(&t, &pos, &Vector3::new(0.0, 1.0, 0.0)).unwrap();
        assert!((p - 100.0).abs() < 1e-6, "{p}");
    }
}
