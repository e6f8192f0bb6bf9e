// Six-orbit run on the e = 0.2 orbit: per-orbit peaks of the lateral and
// directional deviations, the divergence verdict, and the one-orbit
// Floquet multipliers that bound any growth.
//
// ```text
// cargo run --example divergence_check
// ```

use dualspin::sim::analysis::divergence_detector;
use dualspin::sim::{eigen_analysis, monodromy, run_coupled, Scenario, Span};

pub fn run_example() -> dualspin::Result<()> {
    let scenario = Scenario::reference(0.2, 30.0).with_span(Span::Orbits(6.0));
    let trajectory = run_coupled(&scenario)?;
    let report = divergence_detector(&trajectory, 4)?;
    for (name, channel) in [("phi_s", &report.roll), ("psi_s", &report.yaw)] {
        let peaks: Vec<String> = channel.orbit_peaks.iter().map(|p| format!("{:.3e}", p.to_degrees())).collect();
        println!("{name} per-orbit peaks [deg]: {}", peaks.join(" "));
    }
    println!("diverges: {} (onset {:?})", report.diverges(), report.onset());

    let multipliers = eigen_analysis(&monodromy(&scenario)?)?;
    for z in &multipliers.values {
        println!("multiplier |mu| = {:.9}  arg = {:+.4}", z.norm(), z.arg());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
