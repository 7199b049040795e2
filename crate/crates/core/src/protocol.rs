//! The LOCC protocols, executed end-to-end on the state-vector kernel.
//!
//! Register layout during a run, little-endian:
//!
//! * 4 qubits `[a, b, A, B]` = indices `[0, 1, 2, 3]` after `prepare_joint`
//!   (`a`, `b` are the entangled ancilla pair; `A`, `B` the target systems);
//! * 3 qubits `[a, A, B]` after Bob's ancilla is measured out;
//! * 2 qubits `[A, B]` in every reported post-measurement branch.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytics;
use crate::error::{Error, Result};
use crate::linalg::{C_ONE, C_ZERO};
use crate::qsim::{Axis, StateVector};
use crate::tol::{TOL_ANGLE_BOUNDARY, TOL_UNITARY};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Target gate `exp(i ξ σ_{n_A} σ_{n_B})`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GateSpec {
    xi: f64,
    axis_a: Axis,
    axis_b: Axis,
    /// Gates with ξ > π/4 decompose into a |ξ| < π/4 gate plus local
    /// rotations; they are accepted but flagged.
    reducible: bool,
}

impl GateSpec {
    pub fn new(xi: f64, axis_a: Axis, axis_b: Axis) -> Result<GateSpec> {
        if xi.is_finite() && xi <= 0.0 {
            return Err(Error::XiNotPositive);
        }
        if !xi.is_finite() || xi >= FRAC_PI_2 {
            return Err(Error::XiOutOfRange);
        }
        Ok(GateSpec { xi, axis_a, axis_b, reducible: xi > FRAC_PI_4 })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn axis_a(&self) -> Axis {
        self.axis_a
    }

    pub fn axis_b(&self) -> Axis {
        self.axis_b
    }

    pub fn is_reducible(&self) -> bool {
        self.reducible
    }
}

/// Resource pair `cos α |00> + sin α |11>` shared between the parties.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResourceSpec {
    alpha: f64,
}

impl ResourceSpec {
    pub fn new(alpha: f64) -> Result<ResourceSpec> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::AlphaNotPositive);
        }
        if alpha > FRAC_PI_4 + TOL_ANGLE_BOUNDARY {
            return Err(Error::AlphaAbovePiOver4);
        }
        Ok(ResourceSpec { alpha })
    }

    pub fn from_sin2(s: f64) -> Result<ResourceSpec> {
        if !s.is_finite() || s <= 0.0 || s > 0.5 + TOL_ANGLE_BOUNDARY {
            return Err(Error::Sin2AlphaOutOfRange);
        }
        ResourceSpec::new(s.min(0.5).sqrt().asin())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sin2_alpha(&self) -> f64 {
        self.alpha.sin().powi(2)
    }

    /// The pair itself as a 2-qubit state, ancilla `a` on qubit 0.
    pub fn pair_state(&self) -> StateVector {
        StateVector::from_amplitudes(vec![
            Complex64::new(self.alpha.cos(), 0.0),
            C_ZERO,
            C_ZERO,
            Complex64::new(self.alpha.sin(), 0.0),
        ])
        .expect("resource amplitudes are normalized by construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Party {
    Alice,
    Bob,
}

/// One local Pauli applied as a correction, recorded per branch.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PauliCorrection {
    pub party: Party,
    pub axis: Axis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchLabel {
    Success,
    Failure,
    PlusBranch,
    MinusBranch,
}

/// One measurement branch of a protocol run, fully corrected.
///
/// `post_state` is the 2-qubit `[A, B]` state after the recorded corrections
/// were applied, so it realizes `exp(i realized_xi σσ)` on the input to
/// within `fidelity_to_realized`.
#[derive(Debug, Clone, Serialize)]
pub struct BranchOutcome {
    pub label: BranchLabel,
    pub probability: f64,
    pub realized_xi: f64,
    pub corrections: Vec<PauliCorrection>,
    pub post_state: StateVector,
    pub fidelity_to_realized: f64,
}

/// Everything a protocol run produces.
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolResult {
    pub branches: Vec<BranchOutcome>,
    pub classical_bits_sent: u32,
    /// Closed-form success probability for the (ξ, α) pair; 1/2 for the
    /// symmetric variant.
    pub p_closed_form: f64,
    /// Rotation angle Alice applied; absent in the symmetric variant.
    pub theta_used: Option<f64>,
}

impl ProtocolResult {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    /// Probability mass on branches that realize the requested angle.
    pub fn probability_realizing(&self, xi: f64, tol: f64) -> f64 {
        self.branches
            .iter()
            .filter(|b| (b.realized_xi - xi).abs() <= tol)
            .map(|b| b.probability)
            .sum()
    }

    pub fn branch(&self, label: BranchLabel) -> Option<&BranchOutcome> {
        self.branches.iter().find(|b| b.label == label)
    }
}

/// Stator state with the bookkeeping needed to continue the protocol.
#[derive(Debug, Clone, Serialize)]
pub struct Stator {
    /// `S |Ψ_AB>` over the 3-qubit register `[a, A, B]` with
    /// `S = cos α |0_a> ⊗ I + sin α |1_a> ⊗ σ_{n_A} σ_{n_B}`.
    pub state: StateVector,
    pub alpha: f64,
    pub axis_a: Axis,
    pub axis_b: Axis,
    /// Correction Alice applies when Bob reports σ_x = -1: a π rotation
    /// about ẑ on her ancilla.
    pub minus_branch_correction: PauliCorrection,
    /// Largest amplitude difference between the two corrected measurement
    /// branches (they must coincide).
    pub branch_residual: f64,
    /// Bob → Alice: one bit.
    pub classical_bits: u32,
}

/// Tensors the resource pair onto the 2-qubit input, producing the 4-qubit
/// register `[a, b, A, B]`.
pub fn prepare_joint(resource: &ResourceSpec, psi_ab: &StateVector) -> Result<StateVector> {
    if psi_ab.num_qubits() != 2 {
        return Err(Error::WrongShape { expected: 2, got: psi_ab.num_qubits() });
    }
    let norm_sq = psi_ab.norm_sq();
    if (norm_sq - 1.0).abs() > crate::tol::TOL_INPUT_NORM {
        return Err(Error::NotNormalized { norm_sq });
    }
    StateVector::tensor(&resource.pair_state(), psi_ab)
}

/// Runs the stator-formation half of the protocol: both controlled Paulis,
/// Bob's σ_x measurement of ancilla `b`, and the σ_z fix-up on the −1
/// branch. Both measurement branches are enumerated and must agree after
/// the correction; the merged 3-qubit stator state is returned.
pub fn form_stator(joint: &StateVector, gate: &GateSpec, resource: &ResourceSpec) -> Result<Stator> {
    if joint.num_qubits() != 4 {
        return Err(Error::WrongShape { expected: 4, got: joint.num_qubits() });
    }
    let entangled = joint
        .apply_controlled_pauli(0, 2, &gate.axis_a)?
        .apply_controlled_pauli(1, 3, &gate.axis_b)?;

    let branches = entangled.enumerate_measurement(1, &Axis::X)?;
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);

    let plus = branches[0]
        .post_state
        .as_ref()
        .ok_or(Error::ImpossibleBranch)?
        .project_out_qubit(1, [inv_sqrt2, inv_sqrt2])?;
    let minus_raw = branches[1]
        .post_state
        .as_ref()
        .ok_or(Error::ImpossibleBranch)?
        .project_out_qubit(1, [inv_sqrt2, -inv_sqrt2])?;
    // σ_x = -1: Alice flips the sign of |1_a> with a σ_z on her ancilla.
    let minus = minus_raw.apply_single(0, &Axis::Z.pauli())?;

    let branch_residual = plus.max_amp_diff(&minus);
    debug_assert!(branch_residual < TOL_UNITARY);

    Ok(Stator {
        state: plus,
        alpha: resource.alpha(),
        axis_a: gate.axis_a,
        axis_b: gate.axis_b,
        minus_branch_correction: PauliCorrection { party: Party::Alice, axis: Axis::Z },
        branch_residual,
        classical_bits: 1,
    })
}

/// Pulls the gate out of the stator: Alice rotates her ancilla by
/// `exp(i θ σ_x)` and measures σ_z. The |0> outcome realizes ξ; the |1>
/// outcome realizes the trash angle ξ̃ after the recorded σ_{n_A}, σ_{n_B}
/// corrections.
pub fn execute_gate(stator: &Stator, gate: &GateSpec, resource: &ResourceSpec) -> Result<ProtocolResult> {
    if stator.state.num_qubits() != 3 {
        return Err(Error::WrongShape { expected: 3, got: stator.state.num_qubits() });
    }
    if !stator.axis_a.approx_eq(&gate.axis_a, TOL_UNITARY)
        || !stator.axis_b.approx_eq(&gate.axis_b, TOL_UNITARY)
        || (stator.alpha - resource.alpha()).abs() > TOL_UNITARY
    {
        return Err(Error::StatorMismatch);
    }
    let alpha = resource.alpha();
    let xi = gate.xi();
    let theta = analytics::theta_angle(xi, alpha)?;
    let xi_tilde = analytics::trash_angle(xi, alpha)?;
    let p_closed_form = analytics::success_probability(xi, alpha)?;

    // Reference input: the |0_a> component of the stator is cos α · |Ψ_AB>.
    let psi = stator.state.project_out_qubit_normalizing(0, [C_ONE, C_ZERO])?;

    let rotated = stator.state.apply_single(0, &Axis::X.rotation(theta))?;
    let measured = rotated.enumerate_measurement(0, &Axis::Z)?;

    let mut branches = Vec::with_capacity(2);

    // σ_z = +1 (ancilla in |0>): the target gate came out.
    let success_state = measured[0]
        .post_state
        .as_ref()
        .ok_or(Error::ImpossibleBranch)?
        .project_out_qubit(0, [C_ONE, C_ZERO])?;
    let target = psi.apply_joint_exponential(0, 1, xi, &gate.axis_a, &gate.axis_b)?;
    branches.push(BranchOutcome {
        label: BranchLabel::Success,
        probability: measured[0].probability,
        realized_xi: xi,
        corrections: Vec::new(),
        fidelity_to_realized: target.fidelity(&success_state),
        post_state: success_state,
    });

    // σ_z = -1: σσ exp(i ξ̃ σσ) came out; applying σ_{n_A} and σ_{n_B}
    // cancels the prefix and leaves the trash gate.
    let failure_raw = measured[1]
        .post_state
        .as_ref()
        .ok_or(Error::ImpossibleBranch)?
        .project_out_qubit(0, [C_ZERO, C_ONE])?;
    let failure_state = failure_raw
        .apply_single(0, &gate.axis_a.pauli())?
        .apply_single(1, &gate.axis_b.pauli())?;
    let trash_target = psi.apply_joint_exponential(0, 1, xi_tilde, &gate.axis_a, &gate.axis_b)?;
    branches.push(BranchOutcome {
        label: BranchLabel::Failure,
        probability: measured[1].probability,
        realized_xi: xi_tilde,
        corrections: vec![
            PauliCorrection { party: Party::Alice, axis: gate.axis_a },
            PauliCorrection { party: Party::Bob, axis: gate.axis_b },
        ],
        fidelity_to_realized: trash_target.fidelity(&failure_state),
        post_state: failure_state,
    });

    Ok(ProtocolResult {
        branches,
        classical_bits_sent: 1,
        p_closed_form,
        theta_used: Some(theta),
    })
}

/// The full direct protocol: prepare, form the stator, pull the gate out.
/// Two classical bits cross the channel: Bob's σ_x result and Alice's final
/// σ_z result.
pub fn run_protocol(
    resource: &ResourceSpec,
    gate: &GateSpec,
    psi_ab: &StateVector,
) -> Result<ProtocolResult> {
    let joint = prepare_joint(resource, psi_ab)?;
    let stator = form_stator(&joint, gate, resource)?;
    let mut result = execute_gate(&stator, gate, resource)?;
    result.classical_bits_sent = stator.classical_bits + 1;
    Ok(result)
}

/// The symmetric α = ξ variant: after the controlled Paulis, Alice measures
/// σ_y on `a` and Bob measures σ_x on `b`. The four joint outcomes collapse
/// pairwise into the two branches `exp(±i α σσ)`, each of probability 1/2.
///
/// With the standard σ_y eigenbasis (|±⟩ = (|0⟩ ± i|1⟩)/√2) the outcome
/// parity maps as σ_x · σ_y = +1 → −α and σ_x · σ_y = −1 → +α.
pub fn run_symmetric_variant(
    resource: &ResourceSpec,
    axis_a: Axis,
    axis_b: Axis,
    psi_ab: &StateVector,
) -> Result<ProtocolResult> {
    let alpha = resource.alpha();
    let joint = prepare_joint(resource, psi_ab)?;
    let entangled = joint
        .apply_controlled_pauli(0, 2, &axis_a)?
        .apply_controlled_pauli(1, 3, &axis_b)?;

    let plus_target = psi_ab.apply_joint_exponential(0, 1, alpha, &axis_a, &axis_b)?;
    let minus_target = psi_ab.apply_joint_exponential(0, 1, -alpha, &axis_a, &axis_b)?;

    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let y_eigvec = |u: f64| [Complex64::new(inv_sqrt2, 0.0), Complex64::new(0.0, u * inv_sqrt2)];
    let x_eigvec = |v: f64| [Complex64::new(inv_sqrt2, 0.0), Complex64::new(v * inv_sqrt2, 0.0)];

    let mut plus_prob = 0.0;
    let mut minus_prob = 0.0;
    let mut plus_state: Option<StateVector> = None;
    let mut minus_state: Option<StateVector> = None;

    for a_branch in entangled.enumerate_measurement(0, &Axis::Y)? {
        let u = a_branch.outcome as f64;
        let after_a = a_branch
            .post_state
            .as_ref()
            .ok_or(Error::ImpossibleBranch)?
            .project_out_qubit(0, y_eigvec(u))?;
        for b_branch in after_a.enumerate_measurement(0, &Axis::X)? {
            let v = b_branch.outcome as f64;
            let leaf = b_branch
                .post_state
                .as_ref()
                .ok_or(Error::ImpossibleBranch)?
                .project_out_qubit(0, x_eigvec(v))?;
            let weight = a_branch.probability * b_branch.probability;
            let fid_plus = plus_target.fidelity(&leaf);
            let fid_minus = minus_target.fidelity(&leaf);
            if fid_plus >= fid_minus {
                plus_prob += weight;
                if let Some(prev) = &plus_state {
                    debug_assert!(prev.max_amp_diff(&leaf) < TOL_UNITARY);
                } else {
                    plus_state = Some(leaf);
                }
            } else {
                minus_prob += weight;
                if let Some(prev) = &minus_state {
                    debug_assert!(prev.max_amp_diff(&leaf) < TOL_UNITARY);
                } else {
                    minus_state = Some(leaf);
                }
            }
        }
    }

    let plus_state = plus_state.ok_or(Error::ImpossibleBranch)?;
    let minus_state = minus_state.ok_or(Error::ImpossibleBranch)?;

    let branches = vec![
        BranchOutcome {
            label: BranchLabel::PlusBranch,
            probability: plus_prob,
            realized_xi: alpha,
            corrections: Vec::new(),
            fidelity_to_realized: plus_target.fidelity(&plus_state),
            post_state: plus_state,
        },
        BranchOutcome {
            label: BranchLabel::MinusBranch,
            probability: minus_prob,
            realized_xi: -alpha,
            corrections: Vec::new(),
            fidelity_to_realized: minus_target.fidelity(&minus_state),
            post_state: minus_state,
        },
    ];

    Ok(ProtocolResult {
        branches,
        classical_bits_sent: 2,
        p_closed_form: 0.5,
        theta_used: None,
    })
}

impl StateVector {
    /// Like `project_out_qubit` but accepts (and reports) an arbitrary
    /// residual weight: used to peel the reference input back out of a
    /// stator, whose |0_a> component is cos α · |Ψ>.
    pub(crate) fn project_out_qubit_normalizing(
        &self,
        qubit: usize,
        single: [Complex64; 2],
    ) -> Result<StateVector> {
        let reduced_dim = 1usize << (self.num_qubits() - 1);
        let mut reduced: Vec<Complex64> = Vec::with_capacity(reduced_dim);
        let low_mask = (1usize << qubit) - 1;
        for r in 0..reduced_dim {
            let low = r & low_mask;
            let high = (r & !low_mask) << 1;
            let mut acc = C_ZERO;
            for (bit, coeff) in single.iter().enumerate() {
                acc += coeff.conj() * self.amplitude(high | (bit << qubit) | low);
            }
            reduced.push(acc);
        }
        let norm_sq: f64 = reduced.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq < 1e-20 {
            return Err(Error::NotProductState { qubit, residual: 1.0 });
        }
        let scale = Complex64::new(1.0 / norm_sq.sqrt(), 0.0);
        StateVector::from_amplitudes(reduced.into_iter().map(|a| a * scale).collect())
    }
}
