//! Dense state-vector kernel.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * Little-endian indexing: qubit `k` is bit `k` of the basis index, so
//!   the amplitude of `|q_{n-1} ... q_1 q_0>` lives at `sum_k q_k 2^k`.
//! * Basis labels in text output list qubit 0 first: the 4-qubit label
//!   `"1100"` means qubits 0 and 1 are set, i.e. index 3.
//! * Operations take `&self` and return fresh values; a `StateVector` never
//!   mutates after construction.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, C_I, C_ONE, C_ZERO};
use crate::tol::{PROB_FLOOR, TOL_INPUT_NORM, TOL_UNITARY};

pub const MAX_QUBITS: usize = 10;

/// Unit Bloch vector selecting a Pauli operator `σ_n = n · (X, Y, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl Axis {
    pub const X: Axis = Axis { nx: 1.0, ny: 0.0, nz: 0.0 };
    pub const Y: Axis = Axis { nx: 0.0, ny: 1.0, nz: 0.0 };
    pub const Z: Axis = Axis { nx: 0.0, ny: 0.0, nz: 1.0 };

    /// Accepts a vector that is already unit-norm (within input tolerance)
    /// and snaps it exactly onto the unit sphere.
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Axis> {
        if !(nx.is_finite() && ny.is_finite() && nz.is_finite()) {
            return Err(Error::DegenerateAxis);
        }
        let norm = (nx * nx + ny * ny + nz * nz).sqrt();
        if (norm - 1.0).abs() > TOL_INPUT_NORM {
            return Err(Error::NonUnitAxis { nx, ny, nz, norm });
        }
        Ok(Axis { nx: nx / norm, ny: ny / norm, nz: nz / norm })
    }

    /// Normalizes an arbitrary nonzero vector onto the unit sphere.
    pub fn normalized(nx: f64, ny: f64, nz: f64) -> Result<Axis> {
        if !(nx.is_finite() && ny.is_finite() && nz.is_finite()) {
            return Err(Error::DegenerateAxis);
        }
        let norm = (nx * nx + ny * ny + nz * nz).sqrt();
        if norm < 1e-12 {
            return Err(Error::DegenerateAxis);
        }
        Ok(Axis { nx: nx / norm, ny: ny / norm, nz: nz / norm })
    }

    /// The Pauli matrix `σ_n = nx X + ny Y + nz Z`.
    ///
    /// Hermitian, traceless, unitary, and squares to the identity for any
    /// unit axis (which the `Axis` constructors guarantee).
    pub fn pauli(&self) -> Mat2 {
        Mat2([
            [
                Complex64::new(self.nz, 0.0),
                Complex64::new(self.nx, -self.ny),
            ],
            [
                Complex64::new(self.nx, self.ny),
                Complex64::new(-self.nz, 0.0),
            ],
        ])
    }

    /// `exp(i θ σ_n) = cos θ · I + i sin θ · σ_n`.
    pub fn rotation(&self, theta: f64) -> Mat2 {
        let p = self.pauli();
        Mat2::identity()
            .scale(Complex64::new(theta.cos(), 0.0))
            .add(&p.scale(C_I * Complex64::new(theta.sin(), 0.0)))
    }

    pub fn approx_eq(&self, other: &Axis, tol: f64) -> bool {
        (self.nx - other.nx).abs() <= tol
            && (self.ny - other.ny).abs() <= tol
            && (self.nz - other.nz).abs() <= tol
    }
}

/// One enumerated outcome of a projective single-qubit measurement.
///
/// `post_state` is `None` for a branch whose Born weight is below the
/// probability floor; keeping the branch in the list keeps branch positions
/// stable for callers.
#[derive(Debug, Clone, Serialize)]
pub struct MeasurementBranch {
    /// Eigenvalue of the measured operator: +1 or -1.
    pub outcome: i8,
    pub probability: f64,
    pub post_state: Option<StateVector>,
}

/// Dense complex amplitude array over an ordered qubit register.
#[derive(Debug, Clone, Serialize)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|index>` of an `n`-qubit register.
    pub fn basis(num_qubits: usize, index: usize) -> Result<StateVector> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::QubitOutOfRange { qubit: index, num_qubits });
        }
        let mut amplitudes = vec![C_ZERO; dim];
        amplitudes[index] = C_ONE;
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Builds a state from explicit amplitudes, which must already be
    /// normalized within the input tolerance; they are then renormalized to
    /// machine precision.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 || len > (1 << MAX_QUBITS) {
            return Err(Error::BadAmplitudeCount { len });
        }
        let num_qubits = len.trailing_zeros() as usize;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL_INPUT_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = 1.0 / norm_sq.sqrt();
        let amplitudes = amplitudes
            .into_iter()
            .map(|a| a * Complex64::new(scale, 0.0))
            .collect();
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Haar-distributed pure state: independent complex Gaussians, normalized.
    pub fn random_haar<R: rand::Rng>(num_qubits: usize, rng: &mut R) -> Result<StateVector> {
        use rand_distr::StandardNormal;
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        let mut amplitudes = Vec::with_capacity(dim);
        for _ in 0..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            amplitudes.push(Complex64::new(re, im));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let scale = 1.0 / norm_sq.sqrt();
        Ok(StateVector {
            num_qubits,
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
        })
    }

    /// Tensor product with `low` on qubits `0..low.n` and `high` above them.
    pub fn tensor(low: &StateVector, high: &StateVector) -> Result<StateVector> {
        let num_qubits = low.num_qubits + high.num_qubits;
        check_register_size(num_qubits)?;
        let low_dim = low.amplitudes.len();
        let mut amplitudes = vec![C_ZERO; 1 << num_qubits];
        for (hi, &ha) in high.amplitudes.iter().enumerate() {
            if ha == C_ZERO {
                continue;
            }
            for (li, &la) in low.amplitudes.iter().enumerate() {
                amplitudes[hi * low_dim + li] = ha * la;
            }
        }
        Ok(StateVector { num_qubits, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|^2`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Largest elementwise amplitude difference (phase-sensitive).
    pub fn max_amp_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange { qubit, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    /// Applies a single-qubit unitary to `qubit`.
    pub fn apply_single(&self, qubit: usize, u: &Mat2) -> Result<StateVector> {
        self.check_qubit(qubit)?;
        let dev = u.unitarity_deviation();
        if dev > TOL_UNITARY {
            return Err(Error::NonUnitaryMatrix { deviation: dev });
        }
        Ok(self.apply_single_raw(qubit, u))
    }

    /// Same bit loop as `apply_single` but without the unitarity gate, for
    /// internal projector application.
    fn apply_single_raw(&self, qubit: usize, m: &Mat2) -> StateVector {
        let mut amplitudes = self.amplitudes.clone();
        let bit = 1usize << qubit;
        let [[m00, m01], [m10, m11]] = m.0;
        for i in 0..amplitudes.len() {
            if i & bit == 0 {
                let j = i | bit;
                let a0 = amplitudes[i];
                let a1 = amplitudes[j];
                amplitudes[i] = m00 * a0 + m01 * a1;
                amplitudes[j] = m10 * a0 + m11 * a1;
            }
        }
        StateVector { num_qubits: self.num_qubits, amplitudes }
    }

    /// Generalized CNOT: identity when `control` is |0>, `σ_axis` on
    /// `target` when `control` is |1>. Involutive, since `σ_n^2 = I`.
    pub fn apply_controlled_pauli(
        &self,
        control: usize,
        target: usize,
        axis: &Axis,
    ) -> Result<StateVector> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::QubitCollision { qubit: control });
        }
        let p = axis.pauli();
        let [[m00, m01], [m10, m11]] = p.0;
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        let mut amplitudes = self.amplitudes.clone();
        for i in 0..amplitudes.len() {
            if i & cbit != 0 && i & tbit == 0 {
                let j = i | tbit;
                let a0 = amplitudes[i];
                let a1 = amplitudes[j];
                amplitudes[i] = m00 * a0 + m01 * a1;
                amplitudes[j] = m10 * a0 + m11 * a1;
            }
        }
        Ok(StateVector { num_qubits: self.num_qubits, amplitudes })
    }

    /// Applies `exp(i ξ σ_{axis_a} ⊗ σ_{axis_b}) = cos ξ · I + i sin ξ · σσ`
    /// on the two named qubits.
    pub fn apply_joint_exponential(
        &self,
        qubit_a: usize,
        qubit_b: usize,
        xi: f64,
        axis_a: &Axis,
        axis_b: &Axis,
    ) -> Result<StateVector> {
        self.check_qubit(qubit_a)?;
        self.check_qubit(qubit_b)?;
        if qubit_a == qubit_b {
            return Err(Error::QubitCollision { qubit: qubit_a });
        }
        let flipped = self
            .apply_single_raw(qubit_a, &axis_a.pauli())
            .apply_single_raw(qubit_b, &axis_b.pauli());
        let c = Complex64::new(xi.cos(), 0.0);
        let s = C_I * Complex64::new(xi.sin(), 0.0);
        let amplitudes = self
            .amplitudes
            .iter()
            .zip(&flipped.amplitudes)
            .map(|(a, f)| c * a + s * f)
            .collect();
        Ok(StateVector { num_qubits: self.num_qubits, amplitudes })
    }

    /// Enumerates both outcomes of measuring `σ_axis` on `qubit`,
    /// deterministically ordered +1 then -1, with exact Born probabilities.
    pub fn enumerate_measurement(&self, qubit: usize, axis: &Axis) -> Result<Vec<MeasurementBranch>> {
        self.check_qubit(qubit)?;
        let pauli = axis.pauli();
        let mut branches = Vec::with_capacity(2);
        for &outcome in &[1i8, -1i8] {
            // Projector (I + outcome * σ_n) / 2.
            let half = Complex64::new(0.5, 0.0);
            let proj = Mat2::identity()
                .add(&pauli.scale(Complex64::new(outcome as f64, 0.0)))
                .scale(half);
            let projected = self.apply_single_raw(qubit, &proj);
            let probability = projected.norm_sq();
            let post_state = if probability > PROB_FLOOR {
                let scale = Complex64::new(1.0 / probability.sqrt(), 0.0);
                Some(StateVector {
                    num_qubits: self.num_qubits,
                    amplitudes: projected.amplitudes.iter().map(|a| a * scale).collect(),
                })
            } else {
                None
            };
            branches.push(MeasurementBranch {
                outcome,
                probability: if probability > PROB_FLOOR { probability } else { 0.0 },
                post_state,
            });
        }
        Ok(branches)
    }

    /// Contracts `qubit` against a fixed single-qubit state and removes it
    /// from the register. Errors unless the register really factorizes that
    /// way (residual weight beyond tolerance).
    pub(crate) fn project_out_qubit(
        &self,
        qubit: usize,
        single: [Complex64; 2],
    ) -> Result<StateVector> {
        self.check_qubit(qubit)?;
        if self.num_qubits == 1 {
            return Err(Error::BadSubset);
        }
        let low_mask = (1usize << qubit) - 1;
        let dim = 1usize << (self.num_qubits - 1);
        let mut amplitudes = vec![C_ZERO; dim];
        for r in 0..dim {
            let low = r & low_mask;
            let high = (r & !low_mask) << 1;
            let mut acc = C_ZERO;
            for (b, coeff) in single.iter().enumerate() {
                acc += coeff.conj() * self.amplitudes[high | (b << qubit) | low];
            }
            amplitudes[r] = acc;
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL_INPUT_NORM {
            return Err(Error::NotProductState { qubit, residual: (norm_sq - 1.0).abs() });
        }
        let scale = Complex64::new(1.0 / norm_sq.sqrt(), 0.0);
        Ok(StateVector {
            num_qubits: self.num_qubits - 1,
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
        })
    }

    /// Schmidt probabilities across the cut (subset | rest), descending.
    ///
    /// The returned vector has `min(2^|A|, 2^|B|)` entries summing to one.
    pub fn schmidt_spectrum(&self, subset: &[usize]) -> Result<Vec<f64>> {
        let mask = self.subset_mask(subset)?;
        let n_a = mask.count_ones() as usize;
        let n_b = self.num_qubits - n_a;
        let dim_a = 1usize << n_a;
        let dim_b = 1usize << n_b;

        // Coefficient matrix M[row = subset bits, col = complement bits].
        let mut m = crate::linalg::CMat::zeros(dim_a, dim_b);
        for (g, &amp) in self.amplitudes.iter().enumerate() {
            let (row, col) = split_index(g, mask, self.num_qubits);
            m.set(row, col, amp);
        }
        let gram = if dim_a <= dim_b {
            m.mul(&m.adjoint())
        } else {
            m.adjoint().mul(&m)
        };
        let mut eigs = crate::linalg::hermitian_eigenvalues(&gram);
        for v in eigs.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let total: f64 = eigs.iter().sum();
        if total > 0.0 {
            for v in eigs.iter_mut() {
                *v /= total;
            }
        }
        Ok(eigs)
    }

    /// Entanglement entropy across the cut, in bits.
    pub fn entanglement_entropy(&self, subset: &[usize]) -> Result<f64> {
        let spectrum = self.schmidt_spectrum(subset)?;
        Ok(shannon_entropy_bits(&spectrum))
    }

    fn subset_mask(&self, subset: &[usize]) -> Result<usize> {
        if subset.is_empty() {
            return Err(Error::BadSubset);
        }
        let mut mask = 0usize;
        for &q in subset {
            self.check_qubit(q)?;
            mask |= 1 << q;
        }
        if mask.count_ones() as usize == self.num_qubits {
            return Err(Error::BadSubset);
        }
        Ok(mask)
    }

    /// Basis label with qubit 0 written first, e.g. index 3 of a 4-qubit
    /// register renders as "1100".
    pub fn basis_label(index: usize, num_qubits: usize) -> String {
        (0..num_qubits)
            .map(|k| if index & (1 << k) != 0 { '1' } else { '0' })
            .collect()
    }
}

/// `-Σ λ log2 λ` with `0 log 0 := 0`.
pub fn shannon_entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

fn check_register_size(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::BadAmplitudeCount { len: 1usize << num_qubits.min(60) });
    }
    Ok(())
}

/// Splits a global basis index into (bits at `mask` positions, bits at the
/// complement positions), each packed in ascending qubit order.
fn split_index(global: usize, mask: usize, num_qubits: usize) -> (usize, usize) {
    let mut row = 0usize;
    let mut col = 0usize;
    let mut row_bit = 0;
    let mut col_bit = 0;
    for q in 0..num_qubits {
        let bit = (global >> q) & 1;
        if mask & (1 << q) != 0 {
            row |= bit << row_bit;
            row_bit += 1;
        } else {
            col |= bit << col_bit;
            col_bit += 1;
        }
    }
    (row, col)
}
