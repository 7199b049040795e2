//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis ({nx}, {ny}, {nz}) is not unit-norm (|n| = {norm})")]
    NonUnitAxis { nx: f64, ny: f64, nz: f64, norm: f64 },

    #[error("axis components must be finite and not all zero")]
    DegenerateAxis,

    #[error("qubit index {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("control and target qubits must differ (both are {qubit})")]
    QubitCollision { qubit: usize },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NonUnitaryMatrix { deviation: f64 },

    #[error("state vector must have 2^n amplitudes for 1 <= n <= 10, got length {len}")]
    BadAmplitudeCount { len: usize },

    #[error("state vector is not normalized (sum |a|^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("qubit subset must be a nonempty proper subset of the register")]
    BadSubset,

    #[error("qubit {qubit} is not in the requested product state (residual weight {residual:.3e})")]
    NotProductState { qubit: usize, residual: f64 },

    #[error("xi must be positive")]
    XiNotPositive,

    #[error("xi must be finite and less than pi/2")]
    XiOutOfRange,

    #[error("alpha must be positive")]
    AlphaNotPositive,

    #[error("alpha must be at most pi/4")]
    AlphaAbovePiOver4,

    #[error("sin^2(alpha) must lie in (0, 1/2]")]
    Sin2AlphaOutOfRange,

    #[error("stator axes or resource angle do not match the requested gate")]
    StatorMismatch,

    #[error("measurement branch has zero probability where the protocol requires both outcomes")]
    ImpossibleBranch,

    #[error("state has wrong shape: expected {expected} qubits, got {got}")]
    WrongShape { expected: usize, got: usize },

    #[error("probability vector is malformed: {reason}")]
    MalformedDistribution { reason: String },

    #[error("formula is singular at xi = {xi} (cos 2xi vanishes)")]
    SingularFormula { xi: f64 },
}
