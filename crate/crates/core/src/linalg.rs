//! Small dense complex linear algebra.
//!
//! Registers here never exceed ten qubits, so everything is plain row-major
//! `Vec<Complex64>` with no BLAS behind it.

use num_complex::Complex64;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[C_ONE, C_ZERO], [C_ZERO, C_ONE]])
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let m = self.0;
        Mat2([
            [c * m[0][0], c * m[0][1]],
            [c * m[1][0], c * m[1][1]],
        ])
    }

    pub fn add(&self, rhs: &Mat2) -> Self {
        let (a, b) = (self.0, rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }

    pub fn mul(&self, rhs: &Mat2) -> Self {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[C_ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    pub fn adjoint(&self) -> Self {
        let m = self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// Largest elementwise deviation of `U† U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let id = Mat2::identity();
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((p.0[i][j] - id.0[i][j]).norm());
            }
        }
        dev
    }

    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        dev
    }
}

/// Dense complex matrix of arbitrary (small) shape, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C_ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C_ONE;
        }
        m
    }

    pub fn from_mat2(m: &Mat2) -> Self {
        CMat {
            rows: 2,
            cols: 2,
            data: vec![m.0[0][0], m.0[0][1], m.0[1][0], m.0[1][1]],
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik == C_ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += aik * rhs.at(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Kronecker product laid out so that `kron(high, low)` acts on a basis
    /// index `i = low_index + low_dim * high_index`. This matches the
    /// little-endian amplitude ordering used by `StateVector`.
    pub fn kron(high: &CMat, low: &CMat) -> CMat {
        let rows = high.rows * low.rows;
        let cols = high.cols * low.cols;
        let mut out = CMat::zeros(rows, cols);
        for hi in 0..high.rows {
            for hj in 0..high.cols {
                let h = high.at(hi, hj);
                if h == C_ZERO {
                    continue;
                }
                for li in 0..low.rows {
                    for lj in 0..low.cols {
                        out.set(hi * low.rows + li, hj * low.cols + lj, h * low.at(li, lj));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![C_ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = C_ZERO;
            for j in 0..self.cols {
                acc += self.at(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns the eigenvalues in descending order. The input is consumed as a
/// working copy; only the diagonal is trusted on exit.
pub fn hermitian_eigenvalues(mat: &CMat) -> Vec<f64> {
    assert_eq!(mat.rows, mat.cols, "eigenvalues need a square matrix");
    let n = mat.rows;
    let mut a = mat.clone();

    let scale: f64 = a.data.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    let stop = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.at(p, q).norm());
            }
        }
        if off < stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                let g = apq.norm();
                if g < stop {
                    continue;
                }
                let alpha = a.at(p, p).re;
                let beta = a.at(q, q).re;
                let phase = apq / g;
                let tau = (alpha - beta) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- U† A U with U the identity outside the (p, q) block and
                // U[pp] = c, U[pq] = -e^{i phi} s, U[qp] = e^{-i phi} s, U[qq] = c.
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, akp * c + akq * phase.conj() * s);
                    a.set(k, q, -akp * phase * s + akq * c);
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, apk * c + aqk * phase * s);
                    a.set(q, k, -apk * phase.conj() * s + aqk * c);
                }
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a.at(i, i).re).collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigs
}
