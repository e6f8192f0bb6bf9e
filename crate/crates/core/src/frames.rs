//! Reference frames.
//!
//! * Inertial: geocentric, non-rotating, Z to the north pole, X to the
//!   vernal equinox.
//! * Stability: local horizon at the satellite. Z points to the Earth's
//!   centre, Y against the orbit angular momentum, X completes the triad
//!   (along-track for a circular orbit).
//! * Body: platform axes, reached from stability axes by a yaw (ψ about Z),
//!   pitch (θ about Y), roll (φ about X) sequence.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::orbit::InertialState;

/// Yaw-pitch-roll angles (rad) of one frame relative to another.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EulerAngles {
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

impl EulerAngles {
    pub fn new(roll: f64, pitch: f64, yaw: f64) -> Self {
        Self { roll, pitch, yaw }
    }

    pub fn from_degrees(roll: f64, pitch: f64, yaw: f64) -> Self {
        Self::new(roll.to_radians(), pitch.to_radians(), yaw.to_radians())
    }
}

/// Direction cosine matrix taking stability-axis components to body-axis
/// components, R_x(φ)·R_y(θ)·R_z(ψ).
pub fn body_from_stability(angles: &EulerAngles) -> Matrix3<f64> {
    let (sf, cf) = angles.roll.sin_cos();
    let (st, ct) = angles.pitch.sin_cos();
    let (sp, cp) = angles.yaw.sin_cos();
    let roll = Matrix3::new(1.0, 0.0, 0.0, 0.0, cf, sf, 0.0, -sf, cf);
    let pitch = Matrix3::new(ct, 0.0, -st, 0.0, 1.0, 0.0, st, 0.0, ct);
    let yaw = Matrix3::new(cp, sp, 0.0, -sp, cp, 0.0, 0.0, 0.0, 1.0);
    roll * pitch * yaw
}

/// Matrix whose columns are the stability axes expressed in inertial axes.
pub fn inertial_from_stability(state: &InertialState) -> Result<Matrix3<f64>> {
    let r = state.position.norm();
    let h = state.angular_momentum();
    let h_norm = h.norm();
    if !(r > 0.0 && h_norm > 0.0) {
        return Err(Error::Domain("local horizon frame undefined for a degenerate state".into()));
    }
    let z: Vector3<f64> = -state.position / r;
    let y: Vector3<f64> = -h / h_norm;
    let x = y.cross(&z);
    Ok(Matrix3::from_columns(&[x, y, z]))
}

/// Unit vector from the Earth's centre to the satellite, in body axes.
///
/// For zero yaw this is (sin θ, −sin φ cos θ, −cos φ cos θ).
pub fn radial_direction_in_body(angles: &EulerAngles) -> Vector3<f64> {
    body_from_stability(angles) * Vector3::new(0.0, 0.0, -1.0)
}

/// Wraps an angle into (−π, π].
pub fn wrap_angle(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn radial_direction_reduces_to_two_angle_form() {
        let (phi, theta) = (0.3_f64, -0.2_f64);
        let u = radial_direction_in_body(&EulerAngles::new(phi, theta, 0.0));
        let expected = Vector3::new(theta.sin(), -phi.sin() * theta.cos(), -phi.cos() * theta.cos());
        assert!((u - expected).norm() < 1e-15);
    }

    #[test]
    fn equatorial_horizon_frame() {
        let s = InertialState::new(Vector3::new(8000.0, 0.0, 0.0), Vector3::new(0.0, 7.0, 0.0));
        let c = inertial_from_stability(&s).unwrap();
        assert!((c.column(0) - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        assert!((c.column(1) - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
        assert!((c.column(2) - Vector3::new(-1.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wrap_interval() {
        use std::f64::consts::PI;
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_angle(0.0), 0.0);
    }

    proptest! {
        #[test]
        fn body_rotation_is_orthonormal(r in -3.2f64..3.2, p in -3.2f64..3.2, y in -3.2f64..3.2) {
            let m = body_from_stability(&EulerAngles::new(r, p, y));
            prop_assert!((m.transpose() * m - Matrix3::identity()).abs().max() < 1e-14);
            prop_assert!((m.determinant() - 1.0).abs() < 1e-14);
        }
    }
}
