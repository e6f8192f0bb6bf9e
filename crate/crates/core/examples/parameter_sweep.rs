// Runs the eccentricity × inclination grid in parallel and tabulates the
// per-cell metrics.
//
// ```text
// cargo run --example parameter_sweep
// ```

use dualspin::sim::{sweep, Scenario};

pub fn run_example() -> dualspin::Result<()> {
    let template = Scenario::reference(0.0, 0.0);
    let rows = sweep(&template, &[0.0, 0.2], &[0.0, 30.0, 60.0], 0)?;
    println!("{:>5} {:>5}  {:>10} {:>10} {:>10}  {:>10}", "e", "i", "theta_s", "phi_s", "psi_s", "period");
    for row in &rows {
        match &row.outcome {
            Ok(m) => println!(
                "{:>5.2} {:>5.1}  {:>9.3}° {:>9.2e}° {:>9.2e}°  {:>10}",
                row.eccentricity,
                row.inclination_deg,
                m.peak_theta.to_degrees(),
                m.peak_phi.to_degrees(),
                m.peak_psi.to_degrees(),
                m.theta_period.map_or("-".into(), |p| format!("{p:.0} s")),
            ),
            Err(e) => println!("{:>5.2} {:>5.1}  failed: {e}", row.eccentricity, row.inclination_deg),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
