// Assembles the state-space pair in both modes and lists its spectrum.
//
// ```text
// cargo run --example state_space_eigen
// ```

use dualspin::attitude::{nutation_frequency, SatelliteParams, StateSpace};
use dualspin::sim::{eigen_analysis, state_space_at, Scenario, VehicleModel};

fn show(label: &str, ss: &StateSpace) -> dualspin::Result<()> {
    println!("{label}");
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| format!("{:>12.4e}", ss.a[(i, j)])).collect();
        println!("  {}   | {:>12.4e} {:>12.4e}", row.join(" "), ss.b[(i, 0)], ss.b[(i, 1)]);
    }
    let spectrum = eigen_analysis(&ss.a)?;
    for z in &spectrum.values {
        println!("  lambda = {:+.6e} {:+.6e}j", z.re, z.im);
    }
    println!("  nutation {:?} rad/s, residual {:.1e}", nutation_frequency(ss), spectrum.max_residual());
    Ok(())
}

pub fn run_example() -> dualspin::Result<()> {
    let reference = Scenario::reference(0.2, 30.0);
    show("direct entries at perigee", &state_space_at(&reference, 0.0)?)?;
    show("direct entries at apogee", &state_space_at(&reference, 0.5 * reference.orbital_period())?)?;

    let builder = reference.with_vehicle(VehicleModel::Builder(SatelliteParams::synthetic()));
    show("builder, synthetic vehicle", &state_space_at(&builder, 0.0)?)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
