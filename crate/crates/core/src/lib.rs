//! Open-loop dynamics of a prolate dual-spin satellite in an inclined,
//! elliptical orbit.
//!
//! The crate propagates a two-body orbit, evaluates the J2-perturbed
//! gravity-gradient torque on the platform, integrates the linearized
//! attitude state-space with its orbit-driven time-varying entries, and
//! provides stability diagnostics on the result.
//!
//! - [`orbit`]: elements, epoch state, two-body acceleration, orbital rate.
//! - [`gravity_gradient`]: J2 gravity vector, `g_mu` and the linearized
//!   torque coefficients, with a point-mass torque integral as a check.
//! - [`attitude`]: vehicle parameters and the state-space assembly.
//! - [`sim`]: scenarios, the coupled integrator, eigenvalues, envelope
//!   metrics, divergence detection and parameter sweeps.
//! - [`cli`]: scenario files, CSV output and the batch commands.
//! - [`validation`]: the reference checks run by `dualspin validate`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attitude;
pub mod cli;
pub mod error;
pub mod frames;
pub mod gravity_gradient;
pub mod orbit;
pub mod sim;
pub mod validation;

pub use error::{Error, Result};
