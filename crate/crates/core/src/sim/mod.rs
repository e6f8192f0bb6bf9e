//! Scenario description, coupled integration and post-processing.

pub mod analysis;
pub mod eigen;
pub mod integrate;
pub mod scenario;
pub mod sweep;

pub use eigen::{eigen_analysis, EigenAnalysis};
pub use integrate::{integrate_orbit, monodromy, run_coupled, state_space_at, OrbitTrajectory, Sample, Trajectory};
pub use scenario::{InputSignal, Scenario, Span, VehicleModel};
pub use sweep::{sweep, SweepRow};
