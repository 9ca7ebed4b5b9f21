//! Dense complex-matrix kernel for few-qubit numerics.
//!
//! Everything here is sized for matrices up to 32×32 (five qubits), so the
//! implementations favor determinism and accuracy over asymptotics: row-major
//! `Vec<Complex64>` storage, naive O(n³) products, and a cyclic Jacobi
//! eigensolver for Hermitian matrices with a fixed sweep order.

use alloc::{format, vec, vec::Vec};
use num_complex::Complex64;

use crate::{Error, Result};

/// Largest admissible side length of a Kronecker product result.
pub const MAX_KRON_SIDE: usize = 1024;

/// Entrywise asymmetry above which a matrix is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi sweep is converged.
const JACOBI_OFF_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps; hitting it is a numeric error.
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries; rejects NaN/Inf and length mismatches.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix sides must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "entry count {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Convenience constructor from real entries, row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        let data = self.data.iter().map(|z| z * factor).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_re(&self, factor: f64) -> ComplexMatrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexMatrix {
        let data = self.data.iter().map(|z| z.conj()).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference |a_ij - b_ij|.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest |m_ij - conj(m_ji)|; zero for exactly Hermitian matrices.
    pub fn hermitian_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![ZERO; self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            for (j, x) in v.iter().enumerate() {
                acc += self.at(i, j) * x;
            }
            *slot = acc;
        }
        Ok(out)
    }
}

/// ⟨u|v⟩ with the physics convention (conjugate-linear in the first slot).
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Outer product |u⟩⟨v|.
pub fn outer(u: &[Complex64], v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
}

/// ⟨v|M|v⟩; real up to rounding for Hermitian `m`.
pub fn expectation(m: &ComplexMatrix, v: &[Complex64]) -> Result<Complex64> {
    let mv = m.apply(v)?;
    Ok(inner(v, &mv))
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), ZERO],
    )
    .expect("fixed 2x2 entries")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Kronecker product a ⊗ b; block (i,j) of the result is a_ij · b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    if rows > MAX_KRON_SIDE || cols > MAX_KRON_SIDE {
        return Err(Error::SizeLimit(format!(
            "kron result {rows}x{cols} exceeds {MAX_KRON_SIDE} entries per side"
        )));
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let f = a.at(ia, ja);
            if f == ZERO {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out.set(ia * b.rows() + ib, ja * b.cols() + jb, f * b.at(ib, jb));
                }
            }
        }
    }
    Ok(out)
}

/// Partial trace over the subsystems *not* listed in `keep`.
///
/// `dims` are the subsystem dimensions in tensor order (first factor most
/// significant, row-major); `keep` is a strictly increasing, non-empty,
/// proper subset of `0..dims.len()`. The kept subsystems stay in their
/// original relative order and the trace is preserved.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!("partial trace needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let total: usize = dims.iter().product();
    if dims.is_empty() || total != m.rows() {
        return Err(Error::Shape(format!(
            "subsystem dims {dims:?} do not factor a side of {}",
            m.rows()
        )));
    }
    if keep.is_empty() || keep.len() >= dims.len() {
        return Err(Error::Argument("keep set must be a non-empty proper subset of the subsystems".into()));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Argument(format!(
            "keep indices must be strictly increasing and below {}",
            dims.len()
        )));
    }

    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();

    // Stride of each subsystem in the flattened index.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    // Flattened offsets contributed by every kept / traced multi-index.
    let offsets = |subs: &[usize]| -> Vec<usize> {
        let count: usize = subs.iter().map(|&s| dims[s]).product();
        let mut out = vec![0usize; count];
        for (flat, slot) in out.iter_mut().enumerate() {
            let mut rem = flat;
            let mut off = 0;
            for &s in subs {
                let later: usize = subs.iter().filter(|&&t| t > s).map(|&t| dims[t]).product();
                let digit = (rem / later) % dims[s];
                rem %= later;
                off += digit * strides[s];
            }
            *slot = off;
        }
        out
    };

    let keep_off = offsets(keep);
    let traced_off = offsets(&traced);
    let dk = keep_off.len();

    let mut out = ComplexMatrix::zeros(dk, dk);
    for (r, &ro) in keep_off.iter().enumerate() {
        for (c, &co) in keep_off.iter().enumerate() {
            let mut acc = ZERO;
            for &to in &traced_off {
                acc += m.at(ro + to, co + to);
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Real eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, ordered like `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Column `k` as a vector.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.rows()).map(|i| self.eigenvectors.at(i, k)).collect()
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Inputs asymmetric beyond [`HERMITICITY_TOL`] are rejected; below the gate
/// the matrix is symmetrized to (H+H†)/2 before sweeping. The sweep order is
/// fixed, so the output is deterministic for a fixed input.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(Error::Shape(format!("eigendecomposition needs a square matrix, got {}x{}", h.rows(), h.cols())));
    }
    let defect = h.hermitian_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::Argument(format!(
            "matrix is not Hermitian: asymmetry {defect:.3e} exceeds {HERMITICITY_TOL:.0e}"
        )));
    }

    let n = h.rows();
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h.at(i, j) + h.at(j, i).conj()) * 0.5);
    let mut q = ComplexMatrix::identity(n);

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_frobenius(&a) <= JACOBI_OFF_TOL {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for qq in (p + 1)..n {
                jacobi_rotate(&mut a, &mut q, p, qq);
            }
        }
    }
    if !converged && off_diagonal_frobenius(&a) > JACOBI_OFF_TOL {
        return Err(Error::Numeric(format!(
            "Jacobi sweep did not converge within {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.at(j, j).re.partial_cmp(&a.at(i, i).re).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.at(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut col: Vec<Complex64> = (0..n).map(|i| q.at(i, old_col)).collect();
        fix_column_phase(&mut col);
        for (i, &z) in col.iter().enumerate() {
            vectors.set(i, new_col, z);
        }
    }

    Ok(EigenDecomposition { eigenvalues, eigenvectors: vectors })
}

fn off_diagonal_frobenius(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.at(i, j).norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

/// One two-sided rotation zeroing the (p,q) entry of a Hermitian `a`,
/// accumulated into `q_mat`.
fn jacobi_rotate(a: &mut ComplexMatrix, q_mat: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let hpq = a.at(p, q);
    let t = hpq.norm();
    if t <= f64::MIN_POSITIVE {
        a.set(p, q, ZERO);
        a.set(q, p, ZERO);
        return;
    }
    let phase = hpq / Complex64::new(t, 0.0);
    let app = a.at(p, p).re;
    let aqq = a.at(q, q).re;
    let tau = (aqq - app) / (2.0 * t);
    // Smaller-magnitude root of t·x² − (aqq−app)·x − t = 0 for stability.
    let x = if tau >= 0.0 {
        -1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + x * x);
    let s = c * x;

    // Columns: A ← A·G with G = [[c, -s·phase], [s·conj(phase), c]] on (p,q).
    for k in 0..n {
        let akp = a.at(k, p);
        let akq = a.at(k, q);
        a.set(k, p, akp * c + akq * s * phase.conj());
        a.set(k, q, akq * c - akp * s * phase);
    }
    // Rows: A ← G†·A.
    for k in 0..n {
        let apk = a.at(p, k);
        let aqk = a.at(q, k);
        a.set(p, k, apk * c + aqk * s * phase);
        a.set(q, k, aqk * c - apk * s * phase.conj());
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    let dp = a.at(p, p);
    let dq = a.at(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));

    for k in 0..n {
        let vkp = q_mat.at(k, p);
        let vkq = q_mat.at(k, q);
        q_mat.set(k, p, vkp * c + vkq * s * phase.conj());
        q_mat.set(k, q, vkq * c - vkp * s * phase);
    }
}

/// Rotate a vector's global phase so its first significant component is
/// real and positive; ties in eigenspaces then resolve deterministically.
fn fix_column_phase(col: &mut [Complex64]) {
    let pivot = col
        .iter()
        .find(|z| z.norm() > 1e-8)
        .copied()
        .or_else(|| col.iter().copied().max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite")));
    if let Some(z) = pivot {
        let r = z.norm();
        if r > 0.0 {
            let phase = z / Complex64::new(r, 0.0);
            let rot = phase.conj();
            for v in col.iter_mut() {
                *v *= rot;
            }
        }
    }
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues in [-1e-8, 1e-12] are treated as zero: the square root turns
/// harmless rounding dust into 1e-6-scale contamination otherwise. Anything
/// below -1e-8 is rejected.
pub fn sqrtm_psd(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let n = h.rows();
    let mut roots = Vec::with_capacity(n);
    for &lam in &eig.eigenvalues {
        if lam < -1e-8 {
            return Err(Error::Numeric(format!(
                "matrix is not positive semidefinite: eigenvalue {lam:.3e}"
            )));
        }
        roots.push(if lam.abs() <= 1e-12 { 0.0 } else { libm::sqrt(lam) });
    }
    let q = &eig.eigenvectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for (k, &r) in roots.iter().enumerate() {
                acc += q.at(i, k) * Complex64::new(r, 0.0) * q.at(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}
