//! Centralized tolerance constants.
//!
//! Every quantity in this crate is O(1), so double precision leaves several
//! digits of headroom over these thresholds.

/// Unitarity, normalization and exact-identity checks.
pub const TOL_UNITARY: f64 = 1e-12;

/// Residual checks on reconstructed operators and eigenstates.
pub const TOL_RESIDUAL: f64 = 1e-10;

/// Slack accepted when validating caller-supplied normalized input.
pub const TOL_INPUT_NORM: f64 = 1e-9;

/// Slack on angle-domain boundaries so values like 0.7853982 (pi/4 rounded
/// to seven digits) are accepted.
pub const TOL_ANGLE_BOUNDARY: f64 = 1e-7;

/// Below this Born weight a measurement branch is reported as impossible.
pub const PROB_FLOOR: f64 = 1e-24;
