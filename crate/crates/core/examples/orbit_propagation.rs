// Propagates the e = 0.2 reference orbit for one period and reports the
// quantities the attitude model draws from it.
//
// ```text
// cargo run --example orbit_propagation
// ```

use dualspin::orbit::EarthModel;
use dualspin::sim::{integrate_orbit, Scenario, Span};

pub fn run_example() -> dualspin::Result<()> {
    let template = Scenario::reference(0.2, 30.0).with_span(Span::Orbits(1.0));
    // a step that divides the period, so the last sample closes the orbit
    let dt = template.orbital_period() / 7200.0;
    let scenario = template.with_dt(dt);
    let orbit = integrate_orbit(&scenario)?;
    let earth = EarthModel::default();

    let first = orbit.samples[0];
    let last = orbit.samples[orbit.samples.len() - 1];
    let perigee = orbit.samples.iter().map(|s| s.radius).fold(f64::INFINITY, f64::min);
    let apogee = orbit.samples.iter().map(|s| s.radius).fold(0.0, f64::max);
    let (n_min, n_max) = orbit
        .samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.n), hi.max(s.n)));

    println!("period            {:.3} s", scenario.orbital_period());
    println!("samples           {}", orbit.samples.len());
    println!("perigee altitude  {:.3} km", perigee - earth.equatorial_radius);
    println!("apogee altitude   {:.3} km", apogee - earth.equatorial_radius);
    println!("n range           [{n_min:.6e}, {n_max:.6e}] rad/s");
    let drift = last.state.specific_energy(earth.mu) / first.state.specific_energy(earth.mu) - 1.0;
    println!("energy drift      {drift:.2e}");
    println!("closure error     {:.3e} km", (last.state.position - first.state.position).norm());
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
