//! Shared helpers for the integration suites: brute-force operator
//! construction independent of the library's bit-twiddling kernels, plus
//! random-object generators.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nlgate_core::linalg::{CMat, Mat2, C_I, C_ZERO};
use nlgate_core::qsim::{Axis, StateVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_axis<R: Rng>(rng: &mut R) -> Axis {
    use rand_distr::StandardNormal;
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(axis) = Axis::normalized(x, y, z) {
            return axis;
        }
    }
}

/// Random single-qubit unitary exp(i φ σ_m), enough of U(2) for covariance
/// checks (the dropped global phase is unobservable).
pub fn random_unitary<R: Rng>(rng: &mut R) -> Mat2 {
    let axis = random_axis(rng);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    axis.rotation(phi)
}

/// Bloch axis conjugated by a unitary: n' with σ_{n'} = U σ_n U†.
pub fn conjugate_axis(u: &Mat2, axis: &Axis) -> Axis {
    let m = u.mul(&axis.pauli()).mul(&u.adjoint());
    let half = |c: Complex64| c.re / 2.0;
    let nx = half(m.0[0][1] + m.0[1][0]);
    let ny = (m.0[1][0] - m.0[0][1]).im / 2.0;
    let nz = half(m.0[0][0] - m.0[1][1]);
    Axis::normalized(nx, ny, nz).expect("conjugated axis stays unit length")
}

/// Operator acting with `u` on one qubit of an n-qubit register, built by
/// explicit Kronecker products (the brute-force route).
pub fn embed_single(num_qubits: usize, qubit: usize, u: &Mat2) -> CMat {
    let mut op = CMat::identity(1);
    for q in 0..num_qubits {
        let factor = if q == qubit { CMat::from_mat2(u) } else { CMat::identity(2) };
        op = CMat::kron(&factor, &op);
    }
    op
}

/// Brute-force controlled-Pauli: |0><0|_c ⊗ I + |1><1|_c ⊗ σ_target.
pub fn embed_controlled_pauli(
    num_qubits: usize,
    control: usize,
    target: usize,
    axis: &Axis,
) -> CMat {
    let mut p0 = CMat::zeros(2, 2);
    p0.set(0, 0, Complex64::new(1.0, 0.0));
    let mut p1 = CMat::zeros(2, 2);
    p1.set(1, 1, Complex64::new(1.0, 0.0));

    let build = |ctrl_block: &CMat, tgt_block: &CMat| {
        let mut op = CMat::identity(1);
        for q in 0..num_qubits {
            let factor = if q == control {
                ctrl_block.clone()
            } else if q == target {
                tgt_block.clone()
            } else {
                CMat::identity(2)
            };
            op = CMat::kron(&factor, &op);
        }
        op
    };
    build(&p0, &CMat::identity(2)).add(&build(&p1, &CMat::from_mat2(&axis.pauli())))
}

/// Brute-force exp(i ξ σ_a σ_b) on two qubits of an n-qubit register.
pub fn embed_joint_exponential(
    num_qubits: usize,
    qubit_a: usize,
    qubit_b: usize,
    xi: f64,
    axis_a: &Axis,
    axis_b: &Axis,
) -> CMat {
    let dim = 1usize << num_qubits;
    let sig = embed_single(num_qubits, qubit_a, &axis_a.pauli())
        .mul(&embed_single(num_qubits, qubit_b, &axis_b.pauli()));
    CMat::identity(dim)
        .scale(Complex64::new(xi.cos(), 0.0))
        .add(&sig.scale(C_I * Complex64::new(xi.sin(), 0.0)))
}

pub fn state_from_vec(amps: Vec<Complex64>) -> StateVector {
    StateVector::from_amplitudes(amps).unwrap()
}

pub fn apply_op(op: &CMat, state: &StateVector) -> StateVector {
    state_from_vec(op.apply(state.amplitudes()))
}

pub fn max_amp_diff_vs(op_result: &[Complex64], state: &StateVector) -> f64 {
    op_result
        .iter()
        .zip(state.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

pub fn bell_state() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    state_from_vec(vec![
        Complex64::new(h, 0.0),
        C_ZERO,
        C_ZERO,
        Complex64::new(h, 0.0),
    ])
}
