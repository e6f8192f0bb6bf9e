use dualspin::attitude::SatelliteParams;
use dualspin::orbit::{perifocal_to_inertial, EarthModel, KeplerianElements};
use dualspin::sim::analysis::periodicity_error;
use dualspin::sim::{integrate_orbit, run_coupled, InputSignal, Scenario, Span, VehicleModel};
use nalgebra::{Matrix3, Vector6};
use proptest::prelude::*;

fn elements() -> impl Strategy<Value = KeplerianElements> {
    (7000.0..20000.0f64, 0.0..0.5f64, 0.0..180.0f64, 0.0..360.0f64, 0.0..360.0f64, 0.0..360.0f64)
        .prop_filter("perigee above the surface", |(a, e, ..)| a * (1.0 - e) > 6600.0)
        .prop_map(|(a, e, i, raan, argp, nu)| KeplerianElements::from_degrees(a, e, i, raan, argp, nu))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn perifocal_rotation_is_orthonormal(el in elements()) {
        let q = perifocal_to_inertial(&el);
        prop_assert!((q.transpose() * q - Matrix3::identity()).amax() < 1e-14);
        prop_assert!((q.determinant() - 1.0).abs() < 1e-14);
    }
}

/// Orbit propagated over exactly one period in 7200 equal steps.
fn one_orbit(el: KeplerianElements) -> dualspin::sim::OrbitTrajectory {
    let mut s = Scenario::reference(0.0, 0.0).with_span(Span::Orbits(1.0));
    s.elements = el;
    s.dt = s.orbital_period() / 7200.0;
    integrate_orbit(&s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn two_body_invariants_hold(el in elements()) {
        let orbit = one_orbit(el);
        let mu = EarthModel::default().mu;
        let first = orbit.samples[0].state;
        let (e0, h0) = (first.specific_energy(mu), first.angular_momentum());
        for s in &orbit.samples {
            prop_assert!((s.state.specific_energy(mu) / e0 - 1.0).abs() < 1e-9);
            prop_assert!((s.state.angular_momentum() - h0).norm() / h0.norm() < 1e-9);
        }
    }

    #[test]
    fn orbit_follows_the_conic_and_closes(el in elements()) {
        let orbit = one_orbit(el);
        let q = perifocal_to_inertial(&el);
        let (p_axis, q_axis) = (q.column(0).into_owned(), q.column(1).into_owned());
        let p = el.semi_latus_rectum();
        for s in &orbit.samples {
            let r = s.state.position;
            let nu = r.dot(&q_axis).atan2(r.dot(&p_axis));
            let conic = p / (1.0 + el.eccentricity * nu.cos());
            prop_assert!((r.norm() / conic - 1.0).abs() < 1e-8, "{} vs {}", r.norm(), conic);
        }
        let (start, end) = (orbit.samples[0].state, orbit.samples.last().unwrap().state);
        prop_assert!((end.position - start.position).norm() / el.semi_major_axis < 1e-8);
        prop_assert!((end.velocity - start.velocity).norm() / start.speed() < 1e-8);
    }
}

fn order(scenario: &Scenario) -> f64 {
    let final_state = |dt: f64| -> Vector6<f64> {
        run_coupled(&scenario.clone().with_dt(dt)).unwrap().final_attitude().to_vector()
    };
    let (coarse, medium, fine) = (final_state(0.2), final_state(0.1), final_state(0.05));
    ((coarse - medium).norm() / (medium - fine).norm()).log2()
}

#[test]
fn coupled_integration_is_fourth_order() {
    let direct = Scenario::reference(0.2, 30.0).with_span(Span::Seconds(60.0));
    let builder = direct.clone().with_vehicle(VehicleModel::Builder(SatelliteParams::synthetic()));
    for s in [direct, builder] {
        let k = order(&s);
        assert!((3.5..=4.5).contains(&k), "order {k} for {:?}", s.vehicle);
    }
}

#[test]
fn delta_n_repeats_each_orbit() {
    let s = Scenario::reference(0.2, 30.0).with_span(Span::Orbits(2.0));
    let traj = run_coupled(&s).unwrap();
    let delta_n = traj.channel(|x| x.delta_n);
    let err = periodicity_error(&traj.times(), &delta_n, s.orbital_period()).unwrap();
    assert!(err < 1e-6, "{err}");
    assert!(delta_n.iter().any(|v| v.abs() > 1e-4));
}

#[test]
fn delta_n_vanishes_on_circular_orbits() {
    for i in [0.0, 30.0, 60.0] {
        let traj = run_coupled(&Scenario::reference(0.0, i).with_span(Span::Orbits(0.5))).unwrap();
        assert!(traj.samples.iter().all(|s| s.delta_n == 0.0), "i = {i}");
    }
}

#[test]
fn gmu_repeats_every_half_orbit_when_circular() {
    let s = Scenario::reference(0.0, 60.0).with_span(Span::Orbits(1.0)).with_input(InputSignal::none());
    let traj = run_coupled(&s).unwrap();
    let g_mu = traj.channel(|x| x.g_mu);
    let err = periodicity_error(&traj.times(), &g_mu, 0.5 * s.orbital_period()).unwrap();
    assert!(err < 1e-6, "{err}");
    let (lo, hi) = g_mu.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    assert!(hi > lo, "g_mu should vary with latitude");
}

#[test]
fn runs_are_bit_identical() {
    let s = Scenario::reference(0.2, 30.0).with_span(Span::Seconds(500.0));
    let (a, b) = (run_coupled(&s).unwrap(), run_coupled(&s).unwrap());
    assert_eq!(a.samples.len(), b.samples.len());
    for (x, y) in a.samples.iter().zip(&b.samples) {
        let (u, v) = (x.attitude.to_vector(), y.attitude.to_vector());
        assert!(u.iter().zip(v.iter()).all(|(p, q)| p.to_bits() == q.to_bits()));
        assert_eq!(x.orbit, y.orbit);
    }
}
