// Builds a run from a scenario file: builder mode with a modified
// vehicle, J2 torque off, a shorter pulse.
//
// ```text
// cargo run --example scenario_file
// ```

use dualspin::cli::config::RunConfig;
use dualspin::sim::run_coupled;

const SCENARIO: &str = r#"
e = 0.1
i_deg = 45.0
mode = "builder"
i_yz = 60.0
rotor_rate = 12.0
j2_torque = false
impulse_width_s = 0.5
impulse_volts = 2.0
duration_s = 600.0
"#;

pub fn run_example() -> dualspin::Result<()> {
    let config = RunConfig::from_toml_str(SCENARIO)?;
    let scenario = config.scenario(config.dt)?;
    let trajectory = run_coupled(&scenario)?;
    let end = trajectory.final_attitude();
    println!("{} samples over {} s", trajectory.samples.len(), scenario.duration());
    println!(
        "final p q r = {:+.4e} {:+.4e} {:+.4e} rad/s",
        end.p, end.q, end.r
    );
    println!(
        "final phi theta psi = {:+.4e} {:+.4e} {:+.4e} deg",
        end.phi_s.to_degrees(),
        end.theta_s.to_degrees(),
        end.psi_s.to_degrees()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
