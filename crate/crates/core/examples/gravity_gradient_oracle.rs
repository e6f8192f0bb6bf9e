// Compares the linear gravity-gradient torque with a point-mass
// integration of the exact field on a box-dumbbell body.
//
// ```text
// cargo run --example gravity_gradient_oracle
// ```

use dualspin::attitude::SatelliteParams;
use dualspin::frames::EulerAngles;
use dualspin::gravity_gradient::{
    box_dumbbell, brute_force_gg_torque, gg_coefficients, gmu_coefficient, linearized_gg_moment,
};
use dualspin::orbit::{state_from_elements, EarthModel, KeplerianElements};

pub fn run_example() -> dualspin::Result<()> {
    let earth = EarthModel::default().without_j2();
    let elements = KeplerianElements::from_degrees(8078.14, 0.0, 0.0, 0.0, 0.0, 0.0);
    let state = state_from_elements(&elements, &earth)?;

    let inertia = SatelliteParams::reference_consistent().platform_inertia();
    let body = box_dumbbell(&inertia, 1.0)?;
    let g_mu = gmu_coefficient(state.radius(), state.position.z, &earth)?;
    let coeffs = gg_coefficients(g_mu, &inertia);
    println!("g_mu = {g_mu:.6e} 1/s^2  G = ({:.4e}, {:.4e}, {:.4e}) N m/rad", coeffs.g_x, coeffs.g_y, coeffs.g_z);

    // the product of inertia gives a trim torque at zero attitude, which
    // the linear model leaves out; compare perturbations about it
    let trim = brute_force_gg_torque(&body, &state, &EulerAngles::default(), &earth)?;
    println!("trim torque {:.4e} N m", trim.norm());
    println!("{:>6} {:>6}  {:>12} {:>12}  {:>8}", "roll", "pitch", "|exact|", "|linear|", "error");
    for (roll, pitch) in [(1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (0.0, 2.0), (1.0, 1.0)] {
        let angles = EulerAngles::from_degrees(roll, pitch, 0.0);
        let exact = brute_force_gg_torque(&body, &state, &angles, &earth)? - trim;
        let linear = linearized_gg_moment(&coeffs, angles.roll, angles.pitch);
        let error = (exact - linear).norm() / linear.norm();
        println!("{roll:>6.1} {pitch:>6.1}  {:>12.5e} {:>12.5e}  {:>7.3}%", exact.norm(), linear.norm(), 100.0 * error);
    }

    let nominal = EarthModel::default();
    let equator = gmu_coefficient(8078.14, 0.0, &nominal)?;
    let pole = gmu_coefficient(8078.14, 8078.14, &nominal)?;
    println!("g_mu with J2: equator {equator:.6e}, over the pole {pole:.6e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> dualspin::Result<()> {
    run_example()
}
